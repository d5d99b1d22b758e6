#pragma once

#include <random>

#include "mforge/divisor.hpp"
#include "mforge/poly.hpp"
#include "mforge/smith.hpp"

namespace mforge::heights {

using mforge::series::Mat;
using mforge::series::Series;

/// Arc on the smooth cover of a built-in family.
///
/// slr(r): the cover is the space of r x r matrices over the quotient by the
/// determinant-one group, mapping to the affine line by det; the arc is the
/// matrix A(t).  hypersurface(f): the arc is a coordinate list on
/// {f = 0} inside affine (d+1)-space; only Jacobian-type orders are defined.
template <class K>
struct ArcOnCover {
    enum class Family { slr, hypersurface } family = Family::slr;

    int r = 0;        // slr: matrix size
    Mat<K> matrix;    // slr: A(t)

    poly::Poly f;                   // hypersurface: defining equation
    std::vector<Series<K>> coords;  // hypersurface: x(t)

    static ArcOnCover slr(int r, Mat<K> a) {
        if (r < 2 || a.rows() != r || a.cols() != r)
            fail(errc::unsupported_family, "slr family needs a square matrix of size r >= 2");
        ArcOnCover arc;
        arc.family = Family::slr;
        arc.r = r;
        arc.matrix = std::move(a);
        return arc;
    }

    static ArcOnCover hypersurface(poly::Poly f, std::vector<Series<K>> coords) {
        ArcOnCover arc;
        arc.family = Family::hypersurface;
        arc.f = std::move(f);
        arc.coords = std::move(coords);
        if (arc.coords.empty()) fail(errc::invalid_input, "hypersurface arc needs coordinates");
        if (!arc.f.evaluate(arc.coords).is_zero_to_precision())
            fail(errc::invalid_input, "arc does not lie on the hypersurface");
        return arc;
    }
};

/// Arc pullback of the three-term cotangent complex of the family:
/// base differentials -> cover differentials -> relative (cover over stack)
/// differentials, in degrees -1, 0, 1.
template <class K>
struct ComplexPresentation {
    Mat<K> d0;     // base_dim columns, (cover dim) rows
    Mat<K> d1;     // fiber_dim rows, (cover dim) columns
    int fiber_dim = 0;
    int base_dim = 0;
};

struct HeightProfile {
    Valuation ht_minus1;
    Valuation ht0;
    Valuation ht1;
};

/// Signed cofactor of A at (i, j): the partial derivative of det.
template <class K>
Series<K> cofactor(const Mat<K>& a, int i, int j) {
    int r = a.rows();
    std::vector<int> rsel, csel;
    for (int k = 0; k < r; ++k) {
        if (k != i) rsel.push_back(k);
        if (k != j) csel.push_back(k);
    }
    if (rsel.empty()) return Series<K>::monomial(series::detail::unit_one(a), 0, a.at(0, 0).precision());
    Series<K> minor = series::laplace_det(a.submatrix(rsel, csel));
    return ((i + j) % 2 == 0) ? minor : -minor;
}

/// The fixed trace-zero basis: H_i = E_{ii} - E_{i+1,i+1} for i = 1..r-1,
/// followed by the off-diagonal E_{ij} in row-major order.  Heights are
/// basis-independent; the matrices below are reproducible with this choice.
template <class K>
ComplexPresentation<K> build_presentation(const ArcOnCover<K>& arc) {
    if (arc.family != ArcOnCover<K>::Family::slr)
        fail(errc::unsupported_family, "presentations are built for the slr family only");
    const Mat<K>& a = arc.matrix;
    int r = arc.r;
    int prec = a.at(0, 0).precision();
    Valuation vdet = series::laplace_det(a).valuation();
    if (!vdet.is_exact)
        fail(errc::generic_point_violation,
             "det A(t) vanishes to working precision; arc fails the generic-point condition");

    ComplexPresentation<K> pres;
    pres.fiber_dim = r * r - 1;
    pres.base_dim = 1;

    Series<K> zero = Series<K>::zeros(prec, a.at(0, 0).field_zero());
    pres.d0 = Mat<K>(r * r, 1, zero);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) pres.d0.at(i * r + j, 0) = cofactor(a, i, j);

    pres.d1 = Mat<K>(r * r - 1, r * r, zero);
    int row = 0;
    auto put_action_row = [&](auto&& fill) {
        fill();
        ++row;
    };
    // H_i rows: (H_i A) has row i equal to row i of A and row i+1 negated.
    for (int i = 0; i + 1 < r; ++i)
        put_action_row([&] {
            for (int j = 0; j < r; ++j) {
                pres.d1.at(row, i * r + j) = a.at(i, j);
                pres.d1.at(row, (i + 1) * r + j) = -a.at(i + 1, j);
            }
        });
    // E_{ij} rows (i != j): (E_{ij} A) has row i equal to row j of A.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            put_action_row([&] {
                for (int c = 0; c < r; ++c) pres.d1.at(row, i * r + c) = a.at(j, c);
            });
        }
    // d1 d0 = tr(xi) det(A) = 0 on the trace-zero basis.
    if (!(pres.d1 * pres.d0).is_zero_to_precision())
        fail(errc::not_a_complex, "presentation maps do not compose to zero");
    return pres;
}

/// Order of the Jacobian ideal of {f = 0} along the arc: minimum valuation
/// of the partials of f.
template <class K>
Valuation jacobian_order(const poly::Poly& f, const std::vector<Series<K>>& coords) {
    Valuation acc = Valuation::at_least(coords.front().precision());
    for (unsigned v = 0; v < coords.size(); ++v) {
        poly::Poly df = f.derivative(v);
        if (df.is_zero()) continue;
        acc = Valuation::min(acc, df.evaluate(coords).valuation());
    }
    return acc;
}

template <class K>
HeightProfile height_profile(const ComplexPresentation<K>& pres, const ArcOnCover<K>& arc) {
    HeightProfile h;
    h.ht0 = series::fitting_order(pres.d0, pres.fiber_dim);
    h.ht1 = series::fitting_order(pres.d1, 0);
    // The slr base is the affine line, which is smooth.
    h.ht_minus1 = Valuation::exact(0);
    (void)arc;
    return h;
}

template <class K>
HeightProfile height_profile(const ArcOnCover<K>& arc) {
    return height_profile(build_presentation(arc), arc);
}

/// Minimum valuation of the ideal generators along the arc.  slr arcs take
/// polynomials in the matrix entries (row-major); hypersurface arcs in the
/// ambient coordinates.
template <class K>
Valuation ord_along_arc(const std::vector<poly::Poly>& generators, const ArcOnCover<K>& arc) {
    std::vector<Series<K>> xs;
    if (arc.family == ArcOnCover<K>::Family::slr) {
        for (int i = 0; i < arc.r; ++i)
            for (int j = 0; j < arc.r; ++j) xs.push_back(arc.matrix.at(i, j));
    } else {
        xs = arc.coords;
    }
    Valuation acc = Valuation::at_least(xs.front().precision());
    for (const poly::Poly& g : generators) {
        if (g.is_zero()) continue;
        acc = Valuation::min(acc, g.evaluate(xs).valuation());
    }
    return acc;
}

/// Both sides of the arc-level canonical-divisor identity, evaluated exactly:
/// ord_{mK}(arc) on the left, m ht0 - m ht1 - ord_J on the right.
struct IdentityReport {
    long lhs = 0;
    long rhs = 0;
    HeightProfile profile;
    int val_det = 0;
    int ord_jacobian = 0;
    bool pass = false;
};

/// The exceptional divisor of the slr family is cut out by det.  K is a
/// formal sum in the labels "D" / "D'" (synonyms here); anything else is
/// unknown for this family.
template <class K>
IdentityReport check_key_identity(const ArcOnCover<K>& arc, int m, const divisor::DivisorSum& k_div) {
    if (arc.family != ArcOnCover<K>::Family::slr)
        fail(errc::unsupported_family, "key identity is checked on the slr family");
    if (m < 1) fail(errc::invalid_input, "Gorenstein index must be >= 1");

    Valuation vdet = series::laplace_det(arc.matrix).valuation();
    if (!vdet.is_exact) fail(errc::generic_point_violation, "arc fails the generic-point condition");

    mpq_class ord_k(0);
    for (const auto& [label, coeff] : k_div.terms()) {
        if (label != "D" && label != "D'")
            fail(errc::unknown_label, "no order function for divisor '" + label + "' on this family");
        ord_k += coeff * vdet.value;
    }
    mpq_class lhs_q = mpq_class(m) * ord_k;
    if (lhs_q.get_den() != 1)
        fail(errc::invalid_input, "ord_{mK} is not an integer; index m too small for K");

    ComplexPresentation<K> pres = build_presentation(arc);
    HeightProfile h = height_profile(pres, arc);
    if (!h.ht0.is_exact || !h.ht1.is_exact)
        fail(errc::insufficient_precision, "height profile not finite at this precision");

    IdentityReport rep;
    rep.profile = h;
    rep.val_det = vdet.value;
    rep.ord_jacobian = 0;  // smooth base
    rep.lhs = lhs_q.get_num().get_si();
    rep.rhs = static_cast<long>(m) * (h.ht0.value - h.ht1.value) - rep.ord_jacobian;
    rep.pass = rep.lhs == rep.rhs;
    return rep;
}

/// Re-reads the arc at a higher working precision.  Stored coefficients are
/// taken as a polynomial representative, so this is exact for arcs given by
/// polynomial data (samples, parsed literals).
template <class K>
ArcOnCover<K> lift_precision(const ArcOnCover<K>& arc, int precision) {
    ArcOnCover<K> out = arc;
    if (arc.family == ArcOnCover<K>::Family::slr) {
        for (int i = 0; i < arc.r; ++i)
            for (int j = 0; j < arc.r; ++j) out.matrix.at(i, j) = arc.matrix.at(i, j).truncated(precision);
    } else {
        for (auto& c : out.coords) c = c.truncated(precision);
    }
    return out;
}

/// Alternating-sum valuation of the presentation complex, escalating the
/// working precision when a step cannot be certified.
template <class K>
int euler_valuation_of_arc(const ArcOnCover<K>& arc) {
    int base = arc.matrix.proto().precision();
    for (int scale : {1, 2, 4}) {
        ArcOnCover<K> lifted = scale == 1 ? arc : lift_precision(arc, base * scale);
        try {
            ComplexPresentation<K> pres = build_presentation(lifted);
            return series::euler_valuation<K>({pres.d0, pres.d1}, -1);
        } catch (const error& e) {
            if (e.kind() != errc::insufficient_precision || scale == 4) throw;
        }
    }
    fail(errc::insufficient_precision, "unreachable");
}

/// ord_target / ord_component: the multiplicity of the divisor inferred from
/// a single transverse arc.
inline mpq_class infer_multiplicity(long ord_target, long ord_component) {
    if (ord_component == 0) fail(errc::zero_component_order, "component order is zero");
    mpq_class q(ord_target, ord_component);
    q.canonicalize();
    return q;
}

/// Deterministic random arc in the slr family over F_p: entries have
/// independent uniform coefficients below the given degree bound.
inline series::Mat<series::Fp> random_slr_matrix(std::mt19937_64& rng, int r, std::int64_t p,
                                                 int precision, int degree_bound) {
    using series::Fp;
    using series::Series;
    Series<Fp> zero = Series<Fp>::zeros(precision, Fp(0, p));
    series::Mat<Fp> a(r, r, zero);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            std::vector<Fp> cs(static_cast<size_t>(precision), Fp(0, p));
            for (int k = 0; k < std::min(precision, degree_bound); ++k)
                cs[static_cast<size_t>(k)] = Fp(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p)), p);
            a.at(i, j) = Series<Fp>(std::move(cs));
        }
    return a;
}

}  // namespace mforge::heights
