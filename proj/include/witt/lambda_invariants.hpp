#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "witt/mixed_witt.hpp"

namespace witt {

/// Formal invariant sum_{d=0}^{2r} x_d lambda^d of anti-hermitian forms of rank r.
struct LambdaInvariant {
  std::size_t r = 1;
  std::vector<MixedClass> coeffs;

  /// Throws LengthMismatch / AlgebraMismatch on malformed input.
  LambdaInvariant(std::size_t r, std::vector<MixedClass> coeffs);
  /// x lambda^d and nothing else.
  static LambdaInvariant monomial(const QuatAlgebra& alg, std::size_t r, std::size_t d, const MixedClass& x);

  const QuatAlgebra& algebra() const { return coeffs.front().algebra(); }
  LambdaInvariant operator-(const LambdaInvariant& o) const;
  std::string to_string() const;
};

enum class Parity { Even, Odd, Mixed };
std::string to_string(Parity p);
/// Even when x_d has only an even part for even d and only an odd part for odd d;
/// Odd for the reverse pattern.
Parity grading(const LambdaInvariant& a);

/// lambda^d of a diagonal form, from the per-entry polynomials
/// 1 + <z> t + <Nrd z> t^2 multiplied in the mixed ring.  Throws DegreeTooLarge.
MixedClass lambda_herm(std::size_t d, const AntiHermForm& h);

/// prod_k lambda^{d_k}(<z_k>) for a multi-degree with sum |d| (one entry per slot).
MixedClass lambda_multi(const std::vector<std::size_t>& degrees, const AntiHermForm& h);

/// sum_d x_d lambda^d(h).  Throws RankMismatch.
MixedClass eval_invariant(const LambdaInvariant& a, const AntiHermForm& h);

/// sum_i C(r, i) x_{2i}.  Throws LengthMismatch.
MixedClass chi(std::size_t r, const std::vector<MixedClass>& coeffs);

/// y with x = n_Q y in W(k), if one exists.  Exact over Q: n_Q W(Q) is 0 for
/// split Q, Z n_Q for definite Q and {0, n_Q} otherwise.
std::optional<WittClass> divide_by_norm_form(const WittClass& x, const QuatAlgebra& alg);

struct ConstancyResult {
  Decision kind = Decision::Unknown;  // Equal = constant, Distinct = not constant
  std::optional<MixedClass> value;     // set when constant
  std::size_t witness_degree = 0;      // first offending degree when not constant

  bool is_constant() const { return kind == Decision::Equal; }
  bool is_nonconstant() const { return kind == Decision::Distinct; }
};

/// Constant iff x_d lies in n_Q W~ for every d > 0; then the value is chi.
ConstancyResult is_constant_invariant(const LambdaInvariant& a, std::uint64_t search_bound = kDefaultSearchBound);

/// Equal iff a - b is the constant 0.  Throws RankMismatch / AlgebraMismatch.
Decision invariant_equal(const LambdaInvariant& a, const LambdaInvariant& b,
                         std::uint64_t search_bound = kDefaultSearchBound);

struct VersalCheck {
  bool consistent = true;
  /// Entries of the refuting form when !consistent.
  std::vector<Quaternion> point;
  std::size_t samples = 0;
  std::size_t unknown = 0;
};

/// Evaluates a on forms <s i + t j + u ij, ...> with random integer coordinates
/// (one generic pure quaternion per slot, pure norm nonzero) and compares with
/// the claimed constant.
VersalCheck versal_sample_check(const LambdaInvariant& a, const MixedClass& claimed, std::size_t n_samples,
                                std::uint64_t seed, std::int64_t height = 6);

/// C(n, k) as an exact integer.
Integer binomial(std::size_t n, std::size_t k);

}  // namespace witt
