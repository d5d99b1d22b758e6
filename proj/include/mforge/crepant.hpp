#pragma once

#include "mforge/divisor.hpp"

namespace mforge::crepant {

/// SNC resolution data: one entry per exceptional prime divisor with its
/// discrepancy.  Log-terminality (every discrepancy > -1) is enforced on
/// construction of a descriptor.
struct SNCDivisor {
    std::string label;
    mpq_class discrepancy;
    // 0 = reduce m+1 = r/d to lowest terms; otherwise use this denominator
    // (it must clear the denominator of m+1).
    long denominator_override = 0;
};

struct SNCResolutionInput {
    std::string name;
    long gorenstein_index = 1;
    std::vector<SNCDivisor> divisors;
};

/// Which rank the framed-bundle factor of a divisor receives.  certificate
/// uses rank r_i, the unique choice making the crepancy ledger close;
/// paper_literal keeps rank r_i + 1 and reports the resulting residual.
enum class Convention { certificate, paper_literal };

struct StackFactor {
    std::string label;
    long r = 1;  // m + 1 = r/d
    long d = 1;
    long rank = 1;          // rho: r under certificate, r + 1 under paper_literal
    mpq_class coefficient;  // K-contribution (d - rho) on the reduced preimage
};

struct CertificateEntry {
    std::string label;
    mpq_class lhs;  // (d - rho) + m d; zero iff the factor is exactly crepant
    bool passes = false;
};

struct StackDescriptor {
    std::string name;
    Convention convention = Convention::certificate;
    std::vector<StackFactor> factors;
    std::vector<CertificateEntry> certificate;
    divisor::DivisorSum relative_canonical;  // over the reduced-preimage labels
    std::string fiber_product;               // how the stack sits over the resolution
    std::string moduli_interpretation;
    bool crepant = false;
};

/// m + 1 = r/d in lowest terms with r, d positive.
/// Throws errc::not_log_terminal for m <= -1.
std::pair<long, long> decompose_discrepancy(const mpq_class& m);

/// Relative canonical divisor of the rank-r framed-bundle stack over the
/// line-bundle-with-section base: (1 - r) D.
divisor::DivisorSum canonical_Mr(long r);

/// With the degree-d root twist: (1 - r/d) det_d*D'.
divisor::DivisorSum canonical_root(long r, long d);

/// Pullback convention relating the two: det_d*D' = d * D_red.
divisor::MultiplicityTable root_pullback_table(const std::string& from_label,
                                               const std::string& red_label, long d);

StackDescriptor build_crepant_stack(const SNCResolutionInput& input,
                                    Convention convention = Convention::certificate);

struct CrepancyCheck {
    bool crepant = false;
    divisor::DivisorSum residual;  // total relative canonical divisor over Y
};

/// Composes the descriptor's relative canonical divisor with the pullback of
/// the resolution's (downstairs) relative canonical divisor and reports
/// whether the total vanishes identically.
CrepancyCheck check_crepancy(const StackDescriptor& descriptor,
                             const divisor::DivisorSum& resolution_K);

const char* convention_name(Convention c);

}  // namespace mforge::crepant
