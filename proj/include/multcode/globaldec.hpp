#pragma once

#include <optional>
#include <vector>

#include "multcode/code.hpp"
#include "multcode/rational.hpp"
#include "multcode/unidec.hpp"

namespace multcode {

/// m elements of F_{q^m} whose coordinate vectors form an F_q-basis
/// (verified at construction).
struct Basis {
    ExtField ext;
    std::vector<ExtElem> elems;

    Basis(const ExtField& ext_, std::vector<ExtElem> elems_);
};

/// The curve gamma_a(T) = (Tr(a_1 T), ..., Tr(a_m T)), a bijection from
/// F_{q^m} onto F_q^m when a is a basis. Construction evaluates the map at
/// every t, verifies bijectivity, and keeps both directions as tables.
class TraceCurve {
public:
    TraceCurve(Basis basis);

    const Basis& basis() const { return basis_; }
    const ExtField& ext() const { return basis_.ext; }

    /// gamma(t) as a point of F_q^m.
    std::vector<Fp> eval(const ExtElem& t) const;

    /// point index (PointIndexer order) of gamma(element_at(t_idx))
    uint64_t point_of_t(uint64_t t_idx) const { return t_to_point_[t_idx]; }
    /// the unique t index with gamma(t) = point_at(point_idx)
    uint64_t t_of_point(uint64_t point_idx) const { return point_to_t_[point_idx]; }

private:
    Basis basis_;
    std::vector<uint64_t> t_to_point_;
    std::vector<uint64_t> point_to_t_;
};

/// Bases a_1..a_M with M = ceil(s/c)^m in (s,c)-general position.
struct CurveFamily {
    ExtField ext;
    uint32_t s, c;
    std::vector<TraceCurve> curves;
};

/// True iff no nonzero polynomial over F_{q^m} of degree <= s vanishes at
/// every basis point with multiplicity >= c (full column rank of the exact
/// constraint system).
bool is_general_position(const ExtField& ext, const std::vector<Basis>& bases, uint32_t s, uint32_t c);

/// The grid construction: the power basis a = (1, beta, ..., beta^{m-1})
/// translated by every point of the m-dimensional grid of side ceil(s/c),
/// embedded coordinatewise. The family is verified to be in (s,c)-general
/// position; failure is a hard error naming the parameters.
CurveFamily make_general_position_bases(uint32_t q, uint32_t m, uint32_t s, uint32_t c);

/// ell_{i,l}: the order-(s-c+1) univariate received word over F_{q^m} read
/// along the curve, for derivative index l with wt(l) < c.
ReceivedWordUV<ExtField> curve_received_word(const Codeword& word, const TraceCurve& curve,
                                             const MultiIndex& l, uint32_t c);

/// Q_l(T) = P^{(l)} (gamma_a(T)) by exact symbolic substitution of the trace
/// polynomials. Guarded: deg(P) * q^{m-1} must stay at desk scale.
UVPoly<ExtField> compose_with_curve(const MVPoly<ExtField>& poly, const MultiIndex& l, const Basis& basis);

/// Global unique decoding of an m-variate received word by reduction to
/// M * binom(c-1+m, m) univariate unique decodings over F_{q^m}, jet
/// recovery at every point through the general-position systems, and final
/// interpolation. Returns the polynomial only after verifying its encoding
/// lies strictly within delta0 of the received word.
std::optional<MVPoly<PrimeField>> global_unique_decode(const Codeword& word, const Rational& delta0);

}  // namespace multcode
