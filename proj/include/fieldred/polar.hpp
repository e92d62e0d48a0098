#pragma once

#include <optional>

#include "fieldred/reduction.hpp"

namespace fieldred {

enum class FormKind { Quadratic, Sesquilinear };

enum class StandardKind { Hyperbolic, Elliptic, Parabolic, Hermitian, Alternating, PseudoSymplectic };

enum class PolarLabel {
  Hyperbolic,
  Elliptic,
  Parabolic,
  Hermitian,
  Symplectic,
  PseudoSymplectic,
  Atypical,
  Degenerate,
};

const char* to_string(PolarLabel label);
const char* to_string(StandardKind kind);

// A quadratic form (upper-triangular Gram) or sigma-sesquilinear form (full
// Gram) on the space's vector dimension; sigma is the companion automorphism
// exponent x -> x^(p^sigma), 0 for bilinear.
struct FormSpec {
  Space space;
  FormKind kind = FormKind::Quadratic;
  Mat gram;
  int sigma = 0;

  uint32_t eval_quadratic(const Vec& v) const;
  uint32_t eval_sesquilinear(const Vec& x, const Vec& y) const;
  // beta_Q(x,y) = Q(x+y) - Q(x) - Q(y) for quadratics, beta itself otherwise
  uint32_t polar_form(const Vec& x, const Vec& y) const;
  Mat polarization_gram() const;
};

struct PolarType {
  PolarLabel label = PolarLabel::Degenerate;
  int witt = 0;                    // dimension of a maximal totally isotropic subspace
  int sign = 0;                    // +1/-1 for parabolic in odd characteristic
  std::optional<uint32_t> gamma;   // orthogonal-decomposition witness, parabolic only
};

FormSpec standard_form(StandardKind kind, int n, const Space& sp,
                       std::optional<uint32_t> gamma = std::nullopt);

// Labels by the Witt index found by greedy totally-singular extension over
// the enumerated singular points; degeneracy is a label, not an error.
PolarType classify(const FormSpec& f);

// L_alpha o f with L_alpha(x) = Tr(alpha x) down to GF(q); Gram entries are
// evaluated on the reduction basis pairs.
FormSpec trace_compose(const ReductionContext& ctx, const FormSpec& f, uint32_t alpha);

// Pure table lookup for the type of the composed form; never evaluates a
// form.  gamma is required for parabolic input.
PolarLabel predicted_type(StandardKind kind, const ReductionContext& ctx, uint32_t alpha,
                          std::optional<uint32_t> gamma = std::nullopt);

// Nondegeneracy of the composed form as predicted from (kind, q, r) alone.
bool predicted_nondegenerate(StandardKind kind, const ReductionContext& ctx, uint32_t alpha);

unsigned long long count_projective_zeros(const FormSpec& f);
// closed-form quadric sizes; 0 when the label has no closed form here
unsigned long long expected_zero_count(PolarLabel label, int n, unsigned long long q);

bool subspace_totally_isotropic(const FormSpec& f, const ProjSubspace& s);

// field reduction maps absolute subspaces to absolute subspaces; checks all
// totally isotropic/singular subspaces of the source at desk scale
bool absolute_image_check(const ReductionContext& ctx, const FormSpec& f, uint32_t alpha);

struct OrthogonalDecomposition {
  std::vector<std::pair<Vec, Vec>> hyperbolic_pairs;
  Mat leftover;  // anisotropic part, dimension 0, 1 or 2
};
OrthogonalDecomposition orthogonal_decompose(const FormSpec& f);

}  // namespace fieldred
