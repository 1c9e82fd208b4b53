#include "redchain/silp.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace redchain::silp {

Int TwoStageILP::delta() const {
  Int d = 0;
  for (const auto& blocks : {a_blocks, b_blocks})
    for (const auto& m : blocks)
      for (const auto& row : m)
        for (const auto& e : row) d = std::max(d, Int(abs(e)));
  return d;
}

void TwoStageILP::validate() const {
  if (n < 1 || r < 1 || s < 1 || t < 1) fail(errc::dimension_mismatch, "ilp: bad dimensions");
  auto check_blocks = [&](const std::vector<Matrix>& blocks, int cols, const char* what) {
    if (static_cast<int>(blocks.size()) != n) fail(errc::dimension_mismatch, what);
    for (const auto& m : blocks) {
      if (static_cast<int>(m.size()) != r) fail(errc::dimension_mismatch, what);
      for (const auto& row : m)
        if (static_cast<int>(row.size()) != cols) fail(errc::dimension_mismatch, what);
    }
  };
  check_blocks(a_blocks, s, "ilp: A block shape");
  check_blocks(b_blocks, t, "ilp: B block shape");
  if (static_cast<int>(b.size()) != n * r) fail(errc::dimension_mismatch, "ilp: rhs length");
  for (const auto* v : {&lower, &upper, &w})
    if (static_cast<int>(v->size()) != num_vars()) fail(errc::dimension_mismatch, "ilp: vector length");
  for (int i = 0; i < num_vars(); ++i)
    if (lower[static_cast<std::size_t>(i)] > upper[static_cast<std::size_t>(i)])
      fail(errc::invalid_argument, "ilp: lower bound exceeds upper bound");
}

TwoStageILP reduce_mrd_to_ilp(const mrd::MRDInstance& inst) {
  mrd::validate(inst);

  std::size_t rho = 0;
  for (const auto& e : inst.equations) rho = std::max(rho, e.roots.size());

  TwoStageILP ilp;
  ilp.n = static_cast<int>(inst.equations.size());
  ilp.r = 2;
  ilp.s = 1;
  ilp.t = 1 + static_cast<int>(rho);

  ilp.lower.assign(static_cast<std::size_t>(ilp.num_vars()), Int(0));
  ilp.w.assign(static_cast<std::size_t>(ilp.num_vars()), Int(0));
  ilp.upper.assign(static_cast<std::size_t>(ilp.num_vars()), Int(0));
  ilp.upper[0] = inst.zeta;

  for (std::size_t i = 0; i < inst.equations.size(); ++i) {
    const auto& e = inst.equations[i];
    Matrix a{{Int(-1)}, {Int(0)}};
    std::vector<Int> brow0{e.q}, brow1{Int(0)};
    for (std::size_t k = 0; k < rho; ++k) {
      bool real = k < e.roots.size();
      brow0.push_back(real ? e.roots[k] : Int(0));
      brow1.push_back(real ? Int(1) : Int(0));
    }
    ilp.a_blocks.push_back(a);
    ilp.b_blocks.push_back({brow0, brow1});
    ilp.b.push_back(Int(0));
    ilp.b.push_back(Int(1));

    std::size_t base = 1 + i * static_cast<std::size_t>(ilp.t);
    ilp.upper[base] = inst.zeta;  // multiplier
    for (std::size_t k = 0; k < rho; ++k)
      ilp.upper[base + 1 + k] = k < e.roots.size() ? Int(1) : Int(0);
  }
  ilp.validate();
  return ilp;
}

Solution ilp_from_witness(const mrd::MRDInstance& inst, const Int& z,
                          const std::vector<Int>& choices) {
  if (!mrd::verify_mrd(inst, z)) fail(errc::witness_mismatch, "ilp_from_witness: z does not verify");
  if (choices != mrd::mrd_witness_from_z(inst, z))
    fail(errc::witness_mismatch, "ilp_from_witness: choice vector does not match z");

  std::size_t rho = 0;
  for (const auto& e : inst.equations) rho = std::max(rho, e.roots.size());
  const std::size_t t = 1 + rho;

  Solution sol;
  sol.x.assign(1 + inst.equations.size() * t, Int(0));
  sol.x[0] = z;
  for (std::size_t i = 0; i < inst.equations.size(); ++i) {
    const auto& e = inst.equations[i];
    std::size_t base = 1 + i * t;
    sol.x[base] = (z - choices[i]) / e.q;  // multiplier lambda_i
    auto it = std::find(e.roots.begin(), e.roots.end(), choices[i]);
    sol.x[base + 1 + static_cast<std::size_t>(it - e.roots.begin())] = 1;
  }
  return sol;
}

bool verify_solution(const TwoStageILP& ilp, const Solution& sol) {
  ilp.validate();
  if (static_cast<int>(sol.x.size()) != ilp.num_vars())
    fail(errc::dimension_mismatch, "verify_solution: solution length mismatch");
  for (int i = 0; i < ilp.num_vars(); ++i) {
    if (sol.x[static_cast<std::size_t>(i)] < ilp.lower[static_cast<std::size_t>(i)] ||
        sol.x[static_cast<std::size_t>(i)] > ilp.upper[static_cast<std::size_t>(i)])
      return false;
  }
  for (int i = 0; i < ilp.n; ++i) {
    for (int j = 0; j < ilp.r; ++j) {
      Int sum = 0;
      for (int k = 0; k < ilp.s; ++k)
        sum += ilp.a_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(k)] *
               sol.x[static_cast<std::size_t>(k)];
      for (int k = 0; k < ilp.t; ++k)
        sum += ilp.b_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                           [static_cast<std::size_t>(k)] *
               sol.x[static_cast<std::size_t>(ilp.s + i * ilp.t + k)];
      if (sum != ilp.b[static_cast<std::size_t>(i * ilp.r + j)]) return false;
    }
  }
  return true;
}

namespace {

struct ReducedShape {
  std::vector<Int> moduli;
  std::vector<std::vector<std::pair<Int, int>>> roots;  // (value, column) per block
};

ReducedShape reduced_shape(const TwoStageILP& ilp) {
  ilp.validate();
  if (ilp.s != 1 || ilp.r != 2)
    fail(errc::invalid_argument, "solve_reduced: not a reduction-shaped instance");
  ReducedShape shape;
  for (int i = 0; i < ilp.n; ++i) {
    const Matrix& a = ilp.a_blocks[static_cast<std::size_t>(i)];
    const Matrix& bm = ilp.b_blocks[static_cast<std::size_t>(i)];
    if (a[0][0] != -1 || a[1][0] != 0 || bm[0][0] < 2 || bm[1][0] != 0 ||
        ilp.b[static_cast<std::size_t>(2 * i)] != 0 || ilp.b[static_cast<std::size_t>(2 * i + 1)] != 1)
      fail(errc::invalid_argument, "solve_reduced: not a reduction-shaped instance");
    shape.moduli.push_back(bm[0][0]);
    std::vector<std::pair<Int, int>> roots;
    for (int k = 1; k < ilp.t; ++k) {
      if (bm[1][static_cast<std::size_t>(k)] == 1)
        roots.emplace_back(bm[0][static_cast<std::size_t>(k)], k);
      else if (bm[1][static_cast<std::size_t>(k)] != 0)
        fail(errc::invalid_argument, "solve_reduced: bad selector row");
    }
    if (roots.empty()) fail(errc::invalid_argument, "solve_reduced: block without roots");
    shape.roots.push_back(roots);
  }
  return shape;
}

}  // namespace

std::optional<Solution> solve_reduced(const TwoStageILP& ilp) {
  ReducedShape shape = reduced_shape(ilp);
  if (ilp.upper[0] > 10000000) fail(errc::cap_exceeded, "solve_reduced: first-stage bound exceeds 10^7");

  Int start = std::max(Int(1), ilp.lower[0]);
  for (Int z = start; z <= ilp.upper[0]; ++z) {
    Solution sol;
    sol.x.assign(static_cast<std::size_t>(ilp.num_vars()), Int(0));
    sol.x[0] = z;
    bool ok = true;
    for (int i = 0; i < ilp.n && ok; ++i) {
      const Int& q = shape.moduli[static_cast<std::size_t>(i)];
      ok = false;
      for (const auto& [root, col] : shape.roots[static_cast<std::size_t>(i)]) {
        if ((z - root) % q != 0) continue;
        Int lambda = (z - root) / q;
        std::size_t base = static_cast<std::size_t>(1 + i * ilp.t);
        if (lambda < 0 || lambda > ilp.upper[base]) continue;
        sol.x[base] = lambda;
        sol.x[base + static_cast<std::size_t>(col)] = 1;
        ok = true;
        break;
      }
    }
    if (ok) return sol;
  }
  return std::nullopt;
}

namespace {

struct RowRef {
  std::vector<int> vars;  // global variable indices, ascending
  std::vector<Int> coeffs;
  Int rhs;
  int last_var;
};

constexpr std::uint64_t kNodeBudget = 20000000;

struct ExhaustiveSearch {
  const TwoStageILP& ilp;
  std::vector<RowRef> rows;
  std::vector<Int> x;
  std::uint64_t nodes = 0;

  explicit ExhaustiveSearch(const TwoStageILP& p) : ilp(p) {
    for (int i = 0; i < p.n; ++i) {
      for (int j = 0; j < p.r; ++j) {
        RowRef row;
        for (int k = 0; k < p.s; ++k) {
          const Int& c =
              p.a_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          if (c != 0) {
            row.vars.push_back(k);
            row.coeffs.push_back(c);
          }
        }
        for (int k = 0; k < p.t; ++k) {
          const Int& c =
              p.b_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          if (c != 0) {
            row.vars.push_back(p.s + i * p.t + k);
            row.coeffs.push_back(c);
          }
        }
        row.rhs = p.b[static_cast<std::size_t>(i * p.r + j)];
        row.last_var = row.vars.empty() ? -1 : row.vars.back();
        if (row.vars.empty() && row.rhs != 0) row.last_var = -2;  // trivially infeasible
        rows.push_back(std::move(row));
      }
    }
  }

  // interval of the still-unassigned part of a row, given vars < depth fixed
  bool row_feasible(const RowRef& row, int depth) const {
    Int fixed = 0, lo = 0, hi = 0;
    for (std::size_t i = 0; i < row.vars.size(); ++i) {
      int v = row.vars[i];
      const Int& c = row.coeffs[i];
      if (v < depth) {
        fixed += c * x[static_cast<std::size_t>(v)];
      } else {
        Int a = c * ilp.lower[static_cast<std::size_t>(v)];
        Int b2 = c * ilp.upper[static_cast<std::size_t>(v)];
        lo += std::min(a, b2);
        hi += std::max(a, b2);
      }
    }
    return fixed + lo <= row.rhs && row.rhs <= fixed + hi;
  }

  bool dfs(int depth, Solution& out) {
    if (depth == ilp.num_vars()) {
      out.x = x;
      return true;
    }
    // a row whose last unassigned variable is `depth` forces its value
    Int lo = ilp.lower[static_cast<std::size_t>(depth)];
    Int hi = ilp.upper[static_cast<std::size_t>(depth)];
    bool forced_empty = false;
    for (const auto& row : rows) {
      if (row.last_var != depth) continue;
      Int rest = row.rhs;
      Int coeff = 0;
      for (std::size_t i = 0; i < row.vars.size(); ++i) {
        if (row.vars[i] == depth)
          coeff = row.coeffs[i];
        else
          rest -= row.coeffs[i] * x[static_cast<std::size_t>(row.vars[i])];
      }
      if (rest % coeff != 0) {
        forced_empty = true;
        break;
      }
      Int v = rest / coeff;
      lo = std::max(lo, v);
      hi = std::min(hi, v);
    }
    if (forced_empty || lo > hi) return false;

    for (Int v = lo; v <= hi; ++v) {
      if (++nodes > kNodeBudget)
        fail(errc::search_space_too_large, "solve_exhaustive: node budget exhausted");
      x[static_cast<std::size_t>(depth)] = v;
      bool ok = true;
      for (const auto& row : rows) {
        if (row.last_var == -2 || (!row_feasible(row, depth + 1))) {
          ok = false;
          break;
        }
      }
      if (ok && dfs(depth + 1, out)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<Solution> solve_exhaustive(const TwoStageILP& ilp) {
  ilp.validate();
  ExhaustiveSearch search(ilp);
  search.x.assign(static_cast<std::size_t>(ilp.num_vars()), Int(0));
  Solution out;
  if (search.dfs(0, out)) return out;
  return std::nullopt;
}

namespace {

std::vector<Int> binary_digits(const Int& c, int digit_count) {
  std::vector<Int> d(static_cast<std::size_t>(digit_count), Int(0));
  if (c == -1) {
    d[0] = -1;
    return d;
  }
  for (int k = 0; k < digit_count; ++k)
    d[static_cast<std::size_t>(k)] = mpz_tstbit(c.get_mpz_t(), static_cast<unsigned long>(k));
  return d;
}

}  // namespace

EncodedILP encode_binary(const TwoStageILP& ilp) {
  ilp.validate();
  for (const auto& m : ilp.a_blocks)
    for (const auto& row : m)
      for (const auto& e : row)
        if (e < -1 || e > 1)
          fail(errc::invalid_argument, "encode_binary: first-stage entries must be in {-1,0,1}");
  Int delta = 0;
  for (const auto& m : ilp.b_blocks)
    for (const auto& row : m)
      for (const auto& e : row) {
        if (e < -1) fail(errc::negative_coefficient, "encode_binary: entry below -1");
        delta = std::max(delta, e);
      }

  const int d = delta > 1 ? static_cast<int>(mpz_sizeinbase(delta.get_mpz_t(), 2)) : 1;

  EncodedILP enc;
  enc.digit_count = d;
  for (int v = 0; v < ilp.t; ++v) enc.group_map.emplace_back(v * d, d);

  TwoStageILP& out = enc.ilp;
  out.n = ilp.n;
  out.r = ilp.r + ilp.t * (d - 1);
  out.s = ilp.s;
  out.t = ilp.t * d;

  for (int i = 0; i < ilp.n; ++i) {
    Matrix a(static_cast<std::size_t>(out.r), std::vector<Int>(static_cast<std::size_t>(out.s), Int(0)));
    Matrix bm(static_cast<std::size_t>(out.r), std::vector<Int>(static_cast<std::size_t>(out.t), Int(0)));
    for (int j = 0; j < ilp.r; ++j) {
      a[static_cast<std::size_t>(j)] = ilp.a_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int v = 0; v < ilp.t; ++v) {
        auto digits = binary_digits(
            ilp.b_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(v)], d);
        for (int k = 0; k < d; ++k)
          bm[static_cast<std::size_t>(j)][static_cast<std::size_t>(v * d + k)] = digits[static_cast<std::size_t>(k)];
      }
    }
    // doubling chain 2*u_k - u_{k+1} = 0 per digit group
    for (int v = 0; v < ilp.t; ++v) {
      for (int k = 0; k + 1 < d; ++k) {
        int row = ilp.r + v * (d - 1) + k;
        bm[static_cast<std::size_t>(row)][static_cast<std::size_t>(v * d + k)] = 2;
        bm[static_cast<std::size_t>(row)][static_cast<std::size_t>(v * d + k + 1)] = -1;
      }
    }
    out.a_blocks.push_back(a);
    out.b_blocks.push_back(bm);
    for (int j = 0; j < ilp.r; ++j) out.b.push_back(ilp.b[static_cast<std::size_t>(i * ilp.r + j)]);
    for (int j = ilp.r; j < out.r; ++j) out.b.push_back(Int(0));
  }

  for (int k = 0; k < ilp.s; ++k) {
    out.lower.push_back(ilp.lower[static_cast<std::size_t>(k)]);
    out.upper.push_back(ilp.upper[static_cast<std::size_t>(k)]);
    out.w.push_back(ilp.w[static_cast<std::size_t>(k)]);
  }
  for (int i = 0; i < ilp.n; ++i) {
    for (int v = 0; v < ilp.t; ++v) {
      std::size_t orig = static_cast<std::size_t>(ilp.s + i * ilp.t + v);
      for (int k = 0; k < d; ++k) {
        Int scale = Int(1) << k;  // digit k carries value * 2^k
        out.lower.push_back(ilp.lower[orig] * scale);
        out.upper.push_back(ilp.upper[orig] * scale);
        out.w.push_back(k == 0 ? ilp.w[orig] : Int(0));
      }
    }
  }
  out.validate();
  if (out.delta() > 2) fail(errc::invalid_argument, "encode_binary: entry above 2 after encoding");
  return enc;
}

Solution encode_solution(const EncodedILP& enc, const Solution& original) {
  const TwoStageILP& out = enc.ilp;
  const int d = enc.digit_count;
  const int orig_t = out.t / d;
  Solution sol;
  for (int k = 0; k < out.s; ++k) sol.x.push_back(original.x.at(static_cast<std::size_t>(k)));
  for (int i = 0; i < out.n; ++i)
    for (int v = 0; v < orig_t; ++v)
      for (int k = 0; k < d; ++k)
        sol.x.push_back(original.x.at(static_cast<std::size_t>(out.s + i * orig_t + v)) * (Int(1) << k));
  return sol;
}

Solution decode_solution(const EncodedILP& enc, const Solution& encoded) {
  const TwoStageILP& out = enc.ilp;
  const int d = enc.digit_count;
  const int orig_t = out.t / d;
  if (static_cast<int>(encoded.x.size()) != out.num_vars())
    fail(errc::dimension_mismatch, "decode_solution: length mismatch");
  Solution sol;
  for (int k = 0; k < out.s; ++k) sol.x.push_back(encoded.x[static_cast<std::size_t>(k)]);
  for (int i = 0; i < out.n; ++i) {
    for (int v = 0; v < orig_t; ++v) {
      std::size_t base = static_cast<std::size_t>(out.s + i * out.t + v * d);
      for (int k = 0; k + 1 < d; ++k)
        if (encoded.x[base + static_cast<std::size_t>(k)] * 2 != encoded.x[base + static_cast<std::size_t>(k) + 1])
          fail(errc::chain_violation, "decode_solution: digits not in doubling relation");
      sol.x.push_back(encoded.x[base]);
    }
  }
  return sol;
}

std::string write_2ssilp(const TwoStageILP& ilp) {
  ilp.validate();
  std::ostringstream out;
  out << "2SSILP 1\n";
  out << ilp.n << " " << ilp.r << " " << ilp.s << " " << ilp.t << "\n";
  for (int i = 0; i < ilp.n; ++i) {
    for (int j = 0; j < ilp.r; ++j) {
      for (int k = 0; k < ilp.s; ++k) {
        if (k) out << " ";
        out << ilp.a_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      }
      for (int k = 0; k < ilp.t; ++k)
        out << " "
            << ilp.b_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      out << "\n";
    }
  }
  auto vec = [&](const char* tag, const std::vector<Int>& v) {
    out << tag << ":";
    for (const Int& e : v) out << " " << e;
    out << "\n";
  };
  vec("b", ilp.b);
  vec("L", ilp.lower);
  vec("U", ilp.upper);
  vec("w", ilp.w);
  return out.str();
}

namespace {

std::vector<Int> parse_tagged_vector(std::istream& in, const std::string& tag, std::size_t len) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(tag + ":", 0) != 0)
    fail(errc::bad_format, "2ssilp: expected '" + tag + ":' line");
  std::istringstream ls(line.substr(tag.size() + 1));
  std::vector<Int> v;
  std::string tok;
  while (ls >> tok) v.emplace_back(tok);
  if (v.size() != len) fail(errc::bad_format, "2ssilp: vector '" + tag + "' length mismatch");
  return v;
}

}  // namespace

TwoStageILP read_2ssilp(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "2SSILP 1") fail(errc::bad_format, "2ssilp: bad magic line");
  TwoStageILP ilp;
  if (!std::getline(in, line)) fail(errc::bad_format, "2ssilp: missing dimension line");
  {
    std::istringstream ls(line);
    if (!(ls >> ilp.n >> ilp.r >> ilp.s >> ilp.t)) fail(errc::bad_format, "2ssilp: bad dimension line");
  }
  for (int i = 0; i < ilp.n; ++i) {
    Matrix a, bm;
    for (int j = 0; j < ilp.r; ++j) {
      if (!std::getline(in, line)) fail(errc::bad_format, "2ssilp: missing block row");
      std::istringstream ls(line);
      std::vector<Int> arow, brow;
      std::string tok;
      for (int k = 0; k < ilp.s; ++k) {
        if (!(ls >> tok)) fail(errc::bad_format, "2ssilp: short block row");
        arow.emplace_back(tok);
      }
      for (int k = 0; k < ilp.t; ++k) {
        if (!(ls >> tok)) fail(errc::bad_format, "2ssilp: short block row");
        brow.emplace_back(tok);
      }
      if (ls >> tok) fail(errc::bad_format, "2ssilp: long block row");
      a.push_back(arow);
      bm.push_back(brow);
    }
    ilp.a_blocks.push_back(a);
    ilp.b_blocks.push_back(bm);
  }
  std::size_t vars = static_cast<std::size_t>(ilp.s + ilp.n * ilp.t);
  ilp.b = parse_tagged_vector(in, "b", static_cast<std::size_t>(ilp.n * ilp.r));
  ilp.lower = parse_tagged_vector(in, "L", vars);
  ilp.upper = parse_tagged_vector(in, "U", vars);
  ilp.w = parse_tagged_vector(in, "w", vars);
  ilp.validate();
  return ilp;
}

TwoStageILP read_2ssilp(const std::string& text) {
  std::istringstream in(text);
  return read_2ssilp(in);
}

}  // namespace redchain::silp
