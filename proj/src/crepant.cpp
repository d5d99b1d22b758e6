#include "mforge/crepant.hpp"

#include <set>
#include <sstream>

namespace mforge::crepant {

using divisor::DivisorSum;
using divisor::MultiplicityTable;

std::pair<long, long> decompose_discrepancy(const mpq_class& m) {
    if (m <= -1) fail(errc::not_log_terminal, "discrepancy " + m.get_str() + " is not > -1");
    mpq_class shifted = m + 1;
    shifted.canonicalize();
    if (!shifted.get_num().fits_slong_p() || !shifted.get_den().fits_slong_p())
        fail(errc::invalid_input, "discrepancy numerator/denominator too large");
    return {shifted.get_num().get_si(), shifted.get_den().get_si()};
}

DivisorSum canonical_Mr(long r) {
    if (r < 1) fail(errc::invalid_input, "rank must be >= 1");
    return DivisorSum::single("D", mpq_class(1 - r));
}

DivisorSum canonical_root(long r, long d) {
    if (r < 1 || d < 1) fail(errc::invalid_input, "rank and root order must be >= 1");
    mpq_class coeff(d - r, d);
    coeff.canonicalize();
    return DivisorSum::single("det_" + std::to_string(d) + "*D'", coeff);
}

MultiplicityTable root_pullback_table(const std::string& from_label, const std::string& red_label,
                                      long d) {
    return {{from_label, {{red_label, mpq_class(d)}}}};
}

namespace {

std::string red_label(const std::string& label) { return label + "_red"; }

std::string fiber_product_text(const std::vector<StackFactor>& factors) {
    if (factors.empty()) return "Z (no twisted factors)";
    std::ostringstream os;
    os << "Z x_{[A^1/G_m]^" << factors.size() << "} (";
    bool first = true;
    for (const StackFactor& f : factors) {
        if (!first) os << " x ";
        first = false;
        os << "M_" << f.rank << " via det_" << f.d;
    }
    os << ")";
    return os.str();
}

std::string moduli_text(const std::vector<StackFactor>& factors) {
    std::ostringstream os;
    os << "parameterizes tuples ({E_i}, {beta_i}, {iota_i}) where";
    bool first = true;
    for (const StackFactor& f : factors) {
        os << (first ? " " : "; ");
        first = false;
        os << "for " << f.label << ": E is a rank-" << f.rank << " vector bundle, beta: O^"
           << f.rank << " -> E a framing, and iota: det(E)^(x" << f.d << ") ~ O(" << f.label
           << ") an isomorphism sending det(beta)^(x" << f.d << ") to the defining section";
    }
    if (factors.empty()) os << " the empty tuple (the base is already smooth along this locus)";
    return os.str();
}

}  // namespace

StackDescriptor build_crepant_stack(const SNCResolutionInput& input, Convention convention) {
    if (input.gorenstein_index < 1) fail(errc::invalid_input, "Gorenstein index must be >= 1");
    std::set<std::string> seen;
    StackDescriptor out;
    out.name = input.name;
    out.convention = convention;

    for (const SNCDivisor& div : input.divisors) {
        if (!seen.insert(div.label).second)
            fail(errc::invalid_input, "duplicate divisor label '" + div.label + "'");
        mpq_class m_times = div.discrepancy * input.gorenstein_index;
        if (m_times.get_den() != 1)
            fail(errc::invalid_input, "declared Gorenstein index does not clear the discrepancy " +
                                          div.discrepancy.get_str());
        auto [r, d] = decompose_discrepancy(div.discrepancy);
        if (div.denominator_override > 0) {
            if (div.denominator_override % d != 0)
                fail(errc::invalid_input, "denominator override must be a multiple of " + std::to_string(d));
            long scale = div.denominator_override / d;
            r *= scale;
            d *= scale;
        }

        StackFactor f;
        f.label = div.label;
        f.r = r;
        f.d = d;
        f.rank = convention == Convention::certificate ? r : r + 1;
        f.coefficient = mpq_class(d - f.rank);
        out.factors.push_back(f);
        out.relative_canonical.add(red_label(div.label), f.coefficient);

        CertificateEntry cert;
        cert.label = div.label;
        cert.lhs = mpq_class(d - f.rank) + div.discrepancy * d;
        cert.lhs.canonicalize();
        cert.passes = cert.lhs == 0;
        out.certificate.push_back(cert);
    }

    out.fiber_product = fiber_product_text(out.factors);
    out.moduli_interpretation = moduli_text(out.factors);

    DivisorSum resolution_K;
    for (const SNCDivisor& div : input.divisors) resolution_K.add(div.label, div.discrepancy);
    out.crepant = check_crepancy(out, resolution_K).crepant;
    return out;
}

CrepancyCheck check_crepancy(const StackDescriptor& descriptor, const DivisorSum& resolution_K) {
    MultiplicityTable table;
    for (const StackFactor& f : descriptor.factors)
        table[f.label] = {{red_label(f.label), mpq_class(f.d)}};
    CrepancyCheck out;
    out.residual = divisor::compose(descriptor.relative_canonical, resolution_K, table);
    out.crepant = out.residual.is_zero();
    return out;
}

const char* convention_name(Convention c) {
    return c == Convention::certificate ? "certificate" : "paper-literal";
}

}  // namespace mforge::crepant
