#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "textile/errors.hpp"
#include "textile/ktheory.hpp"
#include "textile/matrix.hpp"
#include "textile/system.hpp"

namespace textile {

/// Euclidean algorithm on m >= n:
///   m       = n k_0 + r_0
///   n       = r_0 k_1 + r_1
///   r_{t-2} = r_{t-1} k_t + r_t
/// ending with a zero remainder. `remainders` includes that final zero, so
/// both lists have the same length. `divisible` marks r_0 = 0.
struct EuclidTrace {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::vector<std::int64_t> quotients;
  std::vector<std::int64_t> remainders;
  std::int64_t gcd = 0;
  bool divisible = false;

  /// k_1, ..., k_{j+1}; empty in the divisible case.
  std::vector<std::int64_t> tail_quotients() const {
    if (quotients.size() <= 1) return {};
    return {quotients.begin() + 1, quotients.end()};
  }
};

inline EuclidTrace euclid_trace(std::int64_t m, std::int64_t n) {
  if (n <= 0) throw PreconditionError("euclid_trace: n must be positive");
  if (m < n) throw PreconditionError("euclid_trace: requires m >= n");
  EuclidTrace trace;
  trace.m = m;
  trace.n = n;
  std::int64_t dividend = m, divisor = n;
  for (;;) {
    trace.quotients.push_back(dividend / divisor);
    trace.remainders.push_back(dividend % divisor);
    if (trace.remainders.back() == 0) break;
    dividend = divisor;
    divisor = trace.remainders.back();
  }
  trace.gcd = divisor;
  trace.divisible = trace.remainders.front() == 0;
  return trace;
}

/// [k_1, ..., k_t] = [k_1, ..., k_{t-1}] k_t + [k_1, ..., k_{t-2}], with the
/// empty continuant equal to 1.
inline Integer continuant(const std::vector<std::int64_t>& ks) {
  Integer before = 0, current = 1;
  for (std::int64_t k : ks) {
    Integer next = current * k + before;
    before = std::move(current);
    current = std::move(next);
  }
  return current;
}

namespace detail {

inline void require_exchange_pair(std::int64_t n, std::int64_t m) {
  if (n <= 1 || m <= 1)
    throw PreconditionError("requires N, M > 1 (got N=" + std::to_string(n) +
                            ", M=" + std::to_string(m) + ")");
}

} // namespace detail

/// [[N-1, 0], [M+N-2, (M-1)(M+N-1)]].
inline IntMatrix l_matrix(std::int64_t n, std::int64_t m) {
  detail::require_exchange_pair(n, m);
  const Integer big_n(n), big_m(m);
  return IntMatrix{{big_n - 1, 0}, {big_m + big_n - 2, (big_m - 1) * (big_m + big_n - 1)}};
}

/// E_M - I_M.
inline IntMatrix ones_minus_identity(std::int64_t m) {
  const auto size = static_cast<std::size_t>(m);
  return IntMatrix::all_ones(size) - IntMatrix::identity(size);
}

/// (M+N-2) E_M - (N-1) I_M.
inline IntMatrix exchange_last_block(std::int64_t n, std::int64_t m) {
  const auto size = static_cast<std::size_t>(m);
  return Integer(m + n - 2) * IntMatrix::all_ones(size) -
         Integer(n - 1) * IntMatrix::identity(size);
}

/// (N-2) copies of coker(E_M - I_M) plus coker((M+N-2) E_M - (N-1) I_M),
/// each computed by Smith normal form.
inline AbelianGroup lemma32_groups(std::int64_t n, std::int64_t m) {
  detail::require_exchange_pair(n, m);
  const AbelianGroup ones_block = cokernel(ones_minus_identity(m));
  AbelianGroup total = cokernel(exchange_last_block(n, m));
  for (std::int64_t copy = 0; copy < n - 2; ++copy) total = direct_sum(total, ones_block);
  return total;
}

struct ClosedFormResult {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<Integer> summands; // cyclic orders as listed, ones retained
  AbelianGroup canonical;        // K_0
  AbelianGroup k1;               // always trivial
  EuclidTrace trace;
  Integer g; // (M-1)(M+N-1)
};

/// Closed-form K-groups of the [N], [M] exchange system for 1 < N <= M.
inline ClosedFormResult theorem35_kgroups(std::int64_t n, std::int64_t m) {
  detail::require_exchange_pair(n, m);
  if (n > m)
    throw PreconditionError("closed form requires N <= M (got N=" + std::to_string(n) +
                            ", M=" + std::to_string(m) + ")");
  ClosedFormResult r;
  r.n = n;
  r.m = m;
  r.trace = euclid_trace(m - 1, n - 1);
  r.g = Integer(m - 1) * Integer(m + n - 1);
  for (std::int64_t k = 0; k < m - 2; ++k) r.summands.emplace_back(n - 1);
  for (std::int64_t k = 0; k < n - 2; ++k) r.summands.emplace_back(m - 1);
  if (r.trace.divisible) {
    r.summands.emplace_back(n - 1);
    r.summands.push_back(r.g);
  } else {
    r.summands.emplace_back(r.trace.gcd);
    r.summands.push_back(continuant(r.trace.tail_quotients()) * r.g);
  }
  r.canonical = canonicalize(r.summands);
  return r;
}

struct ClosedFormVerification {
  std::int64_t n = 0;
  std::int64_t m = 0;
  KGroups computed;
  ClosedFormResult closed_form;
  bool k0_agree = false;
  bool k1_agree = false;

  bool agree() const noexcept { return k0_agree && k1_agree && computed.h_cross_check; }
};

/// Builds the exchange system, computes its K-groups by SNF and compares them
/// with the closed form.
inline ClosedFormVerification verify_closed_form(std::int64_t n, std::int64_t m) {
  ClosedFormVerification v;
  v.n = n;
  v.m = m;
  v.closed_form = theorem35_kgroups(n, m);
  v.computed = kgroups_of_system(build_exchange_system(n, m));
  v.k0_agree = group_equal(v.computed.k0, v.closed_form.canonical);
  v.k1_agree = group_equal(v.computed.k1, v.closed_form.k1);
  return v;
}

} // namespace textile
