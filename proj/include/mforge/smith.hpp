#pragma once

#include <optional>
#include <vector>

#include "mforge/series.hpp"

namespace mforge::series {

/// Outcome of diagonalizing a series matrix over k[[t]] at finite precision.
/// invariant_valuations lists the t-orders of the invariant factors found
/// (nondecreasing); rank is their count.  certified records that every pivot
/// valuation stayed strictly below the running precision margin, so the list
/// is the true Smith data of any lift of the input.
struct SmithReport {
    std::vector<int> invariant_valuations;
    int rank = 0;
    bool certified = true;
};

namespace detail {

template <class K>
K unit_one(const Mat<K>& m);

template <>
inline Fp unit_one<Fp>(const Mat<Fp>& m) {
    return Fp(1, m.proto().field_zero().modulus());
}

template <>
inline Rat unit_one<Rat>(const Mat<Rat>&) {
    return Rat(1);
}

template <class K>
struct SnfState {
    Mat<K> work;
    Mat<K> v;      // accumulated column operations:  input * v = diagonalized (up to row ops)
    Mat<K> v_inv;  // its inverse, maintained op by op
    std::vector<int> invariants;
    int rank = 0;
    bool certified = true;
    bool ambiguous = false;  // a nonempty block became indistinguishable from 0
    int margin = 0;          // precision still backing the next pivot decision
};

template <class K>
SnfState<K> snf_eliminate(const Mat<K>& m, bool with_transforms) {
    SnfState<K> st;
    st.work = m;
    int prec = m.proto().precision();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) prec = std::min(prec, m.at(i, j).precision());
    st.margin = prec;

    const Series<K> zero = Series<K>::zeros(prec, m.proto().field_zero());
    const Series<K> one = Series<K>::monomial(unit_one(m), 0, prec);
    if (with_transforms) {
        st.v = Mat<K>(m.cols(), m.cols(), zero);
        st.v_inv = Mat<K>(m.cols(), m.cols(), zero);
        for (int j = 0; j < m.cols(); ++j) {
            st.v.at(j, j) = one;
            st.v_inv.at(j, j) = one;
        }
    }

    Mat<K>& w = st.work;
    int steps = std::min(m.rows(), m.cols());
    for (int k = 0; k < steps; ++k) {
        // Min-valuation pivot in the trailing block.
        std::optional<std::pair<int, int>> best;
        int best_v = 0;
        for (int i = k; i < m.rows(); ++i)
            for (int j = k; j < m.cols(); ++j) {
                Valuation val = w.at(i, j).valuation();
                if (!val.is_exact) continue;
                if (!best || val.value < best_v) {
                    best = {{i, j}};
                    best_v = val.value;
                }
            }
        if (!best) {
            st.ambiguous = true;
            return st;
        }
        auto [pi, pj] = *best;
        if (pi != k)
            for (int j = 0; j < m.cols(); ++j) std::swap(w.at(pi, j), w.at(k, j));
        if (pj != k) {
            for (int i = 0; i < m.rows(); ++i) std::swap(w.at(i, pj), w.at(i, k));
            if (with_transforms) {
                for (int i = 0; i < m.cols(); ++i) std::swap(st.v.at(i, pj), st.v.at(i, k));
                for (int j = 0; j < m.cols(); ++j) std::swap(st.v_inv.at(pj, j), st.v_inv.at(k, j));
            }
        }

        st.certified = st.certified && best_v < st.margin;
        st.margin -= best_v;
        st.invariants.push_back(best_v);
        st.rank = k + 1;

        const Series<K> pivot = w.at(k, k);
        for (int i = k + 1; i < m.rows(); ++i) {
            if (w.at(i, k).is_zero_to_precision()) continue;
            Series<K> f = w.at(i, k).divided_by(pivot);
            for (int j = k; j < m.cols(); ++j) w.at(i, j) = w.at(i, j) - f * w.at(k, j);
        }
        for (int j = k + 1; j < m.cols(); ++j) {
            if (w.at(k, j).is_zero_to_precision()) continue;
            Series<K> f = w.at(k, j).divided_by(pivot);
            for (int i = k; i < m.rows(); ++i) w.at(i, j) = w.at(i, j) - f * w.at(i, k);
            if (with_transforms) {
                // column op C_j -= f C_k  <=>  V <- V E,  Vinv <- E^{-1} Vinv
                for (int i = 0; i < m.cols(); ++i) st.v.at(i, j) = st.v.at(i, j) - f * st.v.at(i, k);
                for (int c = 0; c < m.cols(); ++c)
                    st.v_inv.at(k, c) = st.v_inv.at(k, c) + f * st.v_inv.at(j, c);
            }
        }
    }
    return st;
}

}  // namespace detail

/// Invariant-factor valuations of M over k[[t]].  Throws
/// errc::insufficient_precision when a nonempty trailing block is
/// indistinguishable from zero, since the remaining invariants are then
/// unknowable at this precision.
template <class K>
SmithReport smith_normal_form(const Mat<K>& m) {
    auto st = detail::snf_eliminate(m, /*with_transforms=*/false);
    if (st.ambiguous)
        fail(errc::insufficient_precision,
             "entry indistinguishable from 0 blocks certification (margin " +
                 std::to_string(st.margin) + ")");
    return {st.invariants, st.rank, st.certified};
}

/// Order of the ideal of s x s minors, s = rows - j, by direct enumeration.
template <class K>
Valuation fitting_order_minors(const Mat<K>& m, int j) {
    int s = m.rows() - j;
    if (s <= 0) return Valuation::exact(0);
    int prec = m.proto().precision();
    if (s > m.cols() || s > m.rows()) return Valuation::at_least(prec);
    Valuation acc = Valuation::at_least(prec);
    // Walk all row / column index combinations.
    std::vector<int> rsel(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) rsel[static_cast<size_t>(i)] = i;
    auto advance = [](std::vector<int>& sel, int n) {
        int s2 = static_cast<int>(sel.size());
        int i = s2 - 1;
        while (i >= 0 && sel[static_cast<size_t>(i)] == n - s2 + i) --i;
        if (i < 0) return false;
        ++sel[static_cast<size_t>(i)];
        for (int k = i + 1; k < s2; ++k) sel[static_cast<size_t>(k)] = sel[static_cast<size_t>(k - 1)] + 1;
        return true;
    };
    do {
        std::vector<int> csel(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i) csel[static_cast<size_t>(i)] = i;
        do {
            acc = Valuation::min(acc, laplace_det(m.submatrix(rsel, csel)).valuation());
        } while (advance(csel, m.cols()));
    } while (advance(rsel, m.rows()));
    return acc;
}

/// Same ideal order recomputed from Smith invariants: the s x s minor ideal
/// of a matrix with invariant valuations e_1 <= e_2 <= ... is (t^{e_1+...+e_s}).
template <class K>
Valuation fitting_order_snf(const Mat<K>& m, int j) {
    int s = m.rows() - j;
    if (s <= 0) return Valuation::exact(0);
    int prec = m.proto().precision();
    if (s > m.cols() || s > m.rows()) return Valuation::at_least(prec);
    auto st = detail::snf_eliminate(m, false);
    if (s <= st.rank) {
        int sum = 0;
        for (int i = 0; i < s; ++i) sum += st.invariants[static_cast<size_t>(i)];
        return Valuation::exact(sum);
    }
    int sum = 0;
    for (int e : st.invariants) sum += e;
    if (!st.ambiguous) return Valuation::at_least(prec);  // ideal is zero to precision
    return Valuation::at_least(sum + (s - st.rank) * st.margin);
}

constexpr int kMinorEnumerationCap = 5;  // beyond this, minors blow up combinatorially

/// Order function of Fitt_j(coker M) along t, M presenting the cokernel of
/// a map into R^rows.  Convention: Fitt_j = (1) when rows - j <= 0.
template <class K>
Valuation fitting_order(const Mat<K>& m, int j) {
    int s = m.rows() - j;
    if (s <= kMinorEnumerationCap) return fitting_order_minors(m, j);
    return fitting_order_snf(m, j);
}

/// Both sides of the two torsion-length identities for a certified complex
///   M --alpha--> R^{a+b} --beta--> R^b
/// with torsion middle cohomology Q and torsion coker(beta).
struct Lemma33Report {
    int dim_Q = 0;
    int dim_coker_beta = 0;
    Valuation fitt_Q;          // order of the ideal of a x a minors of alpha
    Valuation fitt_coker_beta; // order of Fitt_0(coker beta)
    bool certified = true;
};

namespace detail {

// Lengths of the cohomology of a based complex of free modules, maps listed
// left to right.  Torsion is certified via Smith ranks.
template <class K>
std::vector<int> cohomology_lengths(const std::vector<Mat<K>>& maps) {
    std::vector<int> out;
    if (maps.empty()) return out;
    for (size_t i = 0; i + 1 < maps.size(); ++i) {
        if (maps[i + 1].cols() != maps[i].rows()) fail(errc::invalid_input, "chain shape mismatch");
        if (!(maps[i + 1] * maps[i]).is_zero_to_precision())
            fail(errc::not_a_complex, "consecutive maps do not compose to zero");
    }
    size_t n_terms = maps.size() + 1;
    for (size_t i = 0; i < n_terms; ++i) {
        const Mat<K>* d_in = i > 0 ? &maps[i - 1] : nullptr;
        const Mat<K>* d_out = i < maps.size() ? &maps[i] : nullptr;
        int dim_term = d_out ? d_out->cols() : d_in->rows();
        if (!d_out) {
            auto st = snf_eliminate(*d_in, false);
            if (st.ambiguous) fail(errc::insufficient_precision, "rank of final map uncertain");
            if (st.rank < dim_term) fail(errc::not_torsion, "top cohomology has free part");
            int sum = 0;
            for (int e : st.invariants) sum += e;
            out.push_back(sum);
            continue;
        }
        auto st = snf_eliminate(*d_out, true);
        if (st.ambiguous) fail(errc::insufficient_precision, "kernel rank uncertain");
        int ker_dim = dim_term - st.rank;
        if (!d_in) {
            if (ker_dim > 0) fail(errc::not_torsion, "leftmost kernel has free part");
            out.push_back(0);
            continue;
        }
        // Coordinates of im(d_in) inside ker(d_out): rows >= rank of Vinv * d_in.
        Mat<K> y = st.v_inv * *d_in;
        for (int r = 0; r < st.rank; ++r)
            for (int c = 0; c < y.cols(); ++c)
                if (!y.at(r, c).is_zero_to_precision())
                    fail(errc::not_a_complex, "image not contained in kernel");
        if (ker_dim == 0) {
            out.push_back(0);
            continue;
        }
        std::vector<int> rsel(static_cast<size_t>(ker_dim));
        for (int r = 0; r < ker_dim; ++r) rsel[static_cast<size_t>(r)] = st.rank + r;
        std::vector<int> csel(static_cast<size_t>(y.cols()));
        for (int c = 0; c < y.cols(); ++c) csel[static_cast<size_t>(c)] = c;
        Mat<K> gamma = y.submatrix(rsel, csel);
        auto gst = snf_eliminate(gamma, false);
        if (gst.ambiguous) fail(errc::insufficient_precision, "torsion length uncertain");
        if (gst.rank < ker_dim) fail(errc::not_torsion, "cohomology has free part");
        int sum = 0;
        for (int e : gst.invariants) sum += e;
        out.push_back(sum);
    }
    return out;
}

}  // namespace detail

template <class K>
Lemma33Report lemma33_check(const Mat<K>& alpha, const Mat<K>& beta, int a, int b) {
    if (alpha.rows() != a + b || beta.cols() != a + b || beta.rows() != b)
        fail(errc::invalid_input, "lemma33 shape mismatch");
    std::vector<int> lengths = detail::cohomology_lengths<K>({alpha, beta});
    Lemma33Report rep;
    rep.dim_Q = lengths[1];
    rep.dim_coker_beta = lengths[2];
    rep.fitt_Q = fitting_order(alpha, b);  // size-a minors of alpha
    rep.fitt_coker_beta = fitting_order(beta, 0);
    return rep;
}

/// Alternating sum of cohomology lengths of a generically exact complex with
/// torsion cohomology; the first term sits in degree start_degree.
template <class K>
int euler_valuation(const std::vector<Mat<K>>& maps, int start_degree = -1) {
    std::vector<int> lengths = detail::cohomology_lengths(maps);
    int acc = 0;
    for (size_t i = 0; i < lengths.size(); ++i) {
        int deg = start_degree + static_cast<int>(i);
        acc += (deg % 2 == 0 ? lengths[i] : -lengths[i]);
    }
    return acc;
}

}  // namespace mforge::series
