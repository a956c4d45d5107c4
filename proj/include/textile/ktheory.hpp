#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "textile/errors.hpp"
#include "textile/matrix.hpp"
#include "textile/system.hpp"

namespace textile {

/// Arbitrary-precision integer used for every normal-form computation.
using Integer = boost::multiprecision::cpp_int;
using IntMatrix = Matrix<Integer>;

inline IntMatrix to_int_matrix(const CountMatrix& m) {
  return m.map([](std::int64_t v) { return Integer(v); });
}

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& x, const Integer& y) {
  return boost::multiprecision::gcd(abs_value(x), abs_value(y));
}

// ---------------------------------------------------------------------------
// Determinants

/// Fraction-free (Bareiss) elimination; exact for any square IntMatrix.
inline Integer determinant(IntMatrix a) {
  if (!a.square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

/// U * M * V = S with U, V unimodular and S = diag(d1, ..., dr, 0, ...),
/// d1 | d2 | ... | dr, every di > 0.
struct SnfResult {
  IntMatrix left;
  IntMatrix diag;
  IntMatrix right;

  /// Nonzero diagonal entries (including ones).
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t k = 0; k < std::min(diag.rows(), diag.cols()); ++k)
      if (diag(k, k) != 0) out.push_back(diag(k, k));
    return out;
  }
};

namespace detail {

/// Elimination engine. Row operations are mirrored into `left`, column
/// operations into `right` when Track is true.
template <bool Track>
class SmithReducer {
public:
  explicit SmithReducer(IntMatrix m) : a_(std::move(m)) {
    if constexpr (Track) {
      left_ = IntMatrix::identity(a_.rows());
      right_ = IntMatrix::identity(a_.cols());
    }
  }

  void run() {
    const std::size_t limit = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      if (!move_smallest_to(t, t, t)) break;
      for (;;) {
        if (reduce_column(t)) continue;
        if (reduce_row(t)) continue;
        if (fix_divisibility(t)) continue;
        break;
      }
      if (a_(t, t) < 0) negate_row(t);
    }
  }

  IntMatrix& matrix() { return a_; }
  IntMatrix& left() { return left_; }
  IntMatrix& right() { return right_; }

private:
  // Moves the smallest nonzero |entry| of rows >= row0, cols >= col0 to (t,t).
  bool move_smallest_to(std::size_t t, std::size_t row0, std::size_t col0) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = row0; i < a_.rows(); ++i)
      for (std::size_t j = col0; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        Integer ax = abs_value(x);
        if (!best || ax < best_abs) {
          best = std::pair{i, j};
          best_abs = std::move(ax);
          if (best_abs == 1) goto found;
        }
      }
  found:
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Clears column t below the pivot; true if a smaller remainder was promoted.
  bool reduce_column(std::size_t t) {
    bool remainder = false;
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (a_(i, t) == 0) continue;
      Integer q = a_(i, t) / a_(t, t);
      if (q != 0) add_row_multiple(i, t, -q);
      if (a_(i, t) != 0) remainder = true;
    }
    if (!remainder) return false;
    std::size_t best = t;
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && (best == t || abs_value(a_(i, t)) < abs_value(a_(best, t)))) best = i;
    swap_rows(t, best);
    return true;
  }

  bool reduce_row(std::size_t t) {
    bool remainder = false;
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (a_(t, j) == 0) continue;
      Integer q = a_(t, j) / a_(t, t);
      if (q != 0) add_col_multiple(j, t, -q);
      if (a_(t, j) != 0) remainder = true;
    }
    if (!remainder) return false;
    std::size_t best = t;
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && (best == t || abs_value(a_(t, j)) < abs_value(a_(t, best)))) best = j;
    swap_cols(t, best);
    return true;
  }

  // With row and column t clear, forces the pivot to divide the remainder.
  bool fix_divisibility(std::size_t t) {
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (a_(i, j) % a_(t, t) != 0) {
          add_row_multiple(t, i, Integer(1));
          return true;
        }
    return false;
  }

  void swap_rows(std::size_t x, std::size_t y) {
    a_.swap_rows(x, y);
    if constexpr (Track) left_.swap_rows(x, y);
  }
  void swap_cols(std::size_t x, std::size_t y) {
    a_.swap_cols(x, y);
    if constexpr (Track) right_.swap_cols(x, y);
  }
  void negate_row(std::size_t r) {
    for (auto& x : a_.row(r)) x = -x;
    if constexpr (Track)
      for (auto& x : left_.row(r)) x = -x;
  }
  // row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    row_axpy(a_, target, source, factor);
    if constexpr (Track) row_axpy(left_, target, source, factor);
  }
  // col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    col_axpy(a_, target, source, factor);
    if constexpr (Track) col_axpy(right_, target, source, factor);
  }

  static void row_axpy(IntMatrix& m, std::size_t target, std::size_t source,
                       const Integer& factor) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(source, j) != 0) m(target, j) += factor * m(source, j);
  }
  static void col_axpy(IntMatrix& m, std::size_t target, std::size_t source,
                       const Integer& factor) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, source) != 0) m(i, target) += factor * m(i, source);
  }

  IntMatrix a_;
  IntMatrix left_;
  IntMatrix right_;
};

} // namespace detail

/// Checks U M V = S, |det U| = |det V| = 1 and the diagonal divisibility
/// chain; returns a description of the first failure.
inline std::optional<std::string> snf_violation(const IntMatrix& m, const SnfResult& r) {
  if (r.left * m * r.right != r.diag) return "U*M*V != S";
  if (abs_value(determinant(r.left)) != 1) return "U is not unimodular";
  if (abs_value(determinant(r.right)) != 1) return "V is not unimodular";
  const IntMatrix& s = r.diag;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return "S is not diagonal";
  bool zero_seen = false;
  const std::size_t k = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < k; ++i) {
    if (s(i, i) < 0) return "negative diagonal entry";
    if (s(i, i) == 0) {
      zero_seen = true;
      continue;
    }
    if (zero_seen) return "nonzero diagonal entry after a zero";
    if (i > 0 && s(i, i) % s(i - 1, i - 1) != 0) return "divisibility chain broken";
  }
  return std::nullopt;
}

namespace detail {
inline std::atomic<std::size_t> verified_snf_calls{0};
} // namespace detail

/// Number of Smith forms produced and verified so far in this process.
inline std::size_t verified_snf_count() noexcept { return detail::verified_snf_calls.load(); }

/// Smith normal form with unimodular transforms. The result is verified by
/// exact multiplication and determinant evaluation before it is returned.
inline SnfResult smith_normal_form(const IntMatrix& m) {
  detail::SmithReducer<true> reducer(m);
  reducer.run();
  SnfResult result{std::move(reducer.left()), std::move(reducer.matrix()),
                   std::move(reducer.right())};
  if (auto problem = snf_violation(m, result))
    throw std::logic_error("smith_normal_form produced an invalid result: " + *problem);
  ++detail::verified_snf_calls;
  return result;
}

// ---------------------------------------------------------------------------
// Determinantal-divisor oracle

inline constexpr std::size_t oracle_dimension_limit = 8;

/// Nonzero invariant factors via d_k = gcd of all k x k minors, factor_k =
/// d_k / d_{k-1}. Independent of the elimination code above.
inline std::vector<Integer> invariant_factors_oracle(const IntMatrix& m) {
  const std::size_t limit = std::min(m.rows(), m.cols());
  if (limit > oracle_dimension_limit)
    throw OracleLimitError("determinantal-divisor oracle is limited to min(rows, cols) <= " +
                           std::to_string(oracle_dimension_limit));

  auto combinations = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (;;) {
      out.push_back(pick);
      std::size_t pos = k;
      while (pos > 0 && pick[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t q = pos; q < k; ++q) pick[q] = pick[q - 1] + 1;
    }
    return out;
  };

  std::vector<Integer> factors;
  Integer previous = 1;
  for (std::size_t k = 1; k <= limit; ++k) {
    Integer divisor = 0;
    const auto row_sets = combinations(m.rows(), k);
    const auto col_sets = combinations(m.cols(), k);
    for (const auto& rs : row_sets)
      for (const auto& cs : col_sets) {
        IntMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(rs[i], cs[j]);
        divisor = gcd(divisor, determinant(std::move(minor)));
      }
    if (divisor == 0) break;
    factors.push_back(divisor / previous);
    previous = divisor;
  }
  return factors;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

/// Z^free_rank + Z/t1 + ... + Z/tk with 1 < t1 | t2 | ... | tk.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool trivial() const noexcept { return free_rank == 0 && torsion.empty(); }

  /// Product of the torsion orders.
  Integer torsion_order() const {
    Integer p = 1;
    for (const auto& t : torsion) p *= t;
    return p;
  }

  /// "0", "Z/8Z", "Z^2 + Z/3Z".
  std::string to_string() const {
    if (trivial()) return "0";
    std::string out;
    if (free_rank == 1) out = "Z";
    if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) {
      if (!out.empty()) out += " + ";
      out += "Z/" + t.str() + "Z";
    }
    return out;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Invariant-factor form of the direct sum of cyclic groups of the given
/// orders (0 meaning Z). Pairwise (gcd, lcm) replacement yields the
/// divisibility chain without factoring.
inline AbelianGroup canonicalize(const std::vector<Integer>& orders) {
  AbelianGroup g;
  std::vector<Integer> finite;
  for (const auto& x : orders) {
    if (x < 0) throw PreconditionError("cyclic orders must be nonnegative");
    if (x == 0)
      ++g.free_rank;
    else if (x != 1)
      finite.push_back(x);
  }
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      const Integer d = gcd(finite[i], finite[j]);
      const Integer l = finite[i] / d * finite[j];
      finite[i] = d;
      finite[j] = l;
    }
  for (auto& x : finite)
    if (x != 1) g.torsion.push_back(std::move(x));
  return g;
}

inline bool group_equal(const AbelianGroup& x, const AbelianGroup& y) {
  return x.free_rank == y.free_rank && x.torsion == y.torsion;
}

inline AbelianGroup direct_sum(const AbelianGroup& x, const AbelianGroup& y) {
  std::vector<Integer> orders(x.free_rank + y.free_rank, Integer(0));
  orders.insert(orders.end(), x.torsion.begin(), x.torsion.end());
  orders.insert(orders.end(), y.torsion.begin(), y.torsion.end());
  return canonicalize(orders);
}

inline AbelianGroup free_group(std::size_t rank) { return AbelianGroup{rank, {}}; }

/// Z^rows / M Z^cols, read off an already verified Smith form of M.
inline AbelianGroup cokernel(const SnfResult& snf) {
  AbelianGroup g;
  std::size_t rank = 0;
  for (const auto& d : snf.invariant_factors()) {
    ++rank;
    if (d != 1) g.torsion.push_back(d);
  }
  g.free_rank = snf.diag.rows() - rank;
  return g;
}

/// Rank of Ker(M) in Z^cols (equivalently over Q).
inline std::size_t kernel_rank(const SnfResult& snf) {
  return snf.diag.cols() - snf.invariant_factors().size();
}

inline AbelianGroup cokernel(const IntMatrix& m) { return cokernel(smith_normal_form(m)); }
inline std::size_t kernel_rank(const IntMatrix& m) { return kernel_rank(smith_normal_form(m)); }

// ---------------------------------------------------------------------------
// K-groups of O_{H_kappa}

struct KGroups {
  AbelianGroup k0; // Z^n / (A_kappa + B_kappa - I) Z^n
  AbelianGroup k1; // Ker(A_kappa + B_kappa - I), free
  /// Z^{2n} / (I - H_kappa^T) Z^{2n}, the usual Cuntz-Krieger K_0.
  AbelianGroup k0_from_h;
  bool h_cross_check = false;
};

/// A_kappa + B_kappa - I_n as an IntMatrix.
inline IntMatrix system_matrix(const TextileSystem& sys) {
  return to_int_matrix(sys.a_kappa + sys.b_kappa) - IntMatrix::identity(sys.omega_size());
}

inline KGroups kgroups_of_system(const TextileSystem& sys) {
  const SnfResult snf = smith_normal_form(system_matrix(sys));
  KGroups out;
  out.k0 = cokernel(snf);
  out.k1 = free_group(kernel_rank(snf));
  const IntMatrix h = to_int_matrix(sys.h_kappa);
  out.k0_from_h = cokernel(IntMatrix::identity(h.rows()) - h.transpose());
  out.h_cross_check = group_equal(out.k0, out.k0_from_h);
  return out;
}

} // namespace textile
