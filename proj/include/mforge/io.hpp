#pragma once

#include <json.hpp>

#include "mforge/crepant.hpp"
#include "mforge/heights.hpp"
#include "mforge/jets.hpp"

namespace mforge::io {

constexpr const char* kSchema = "motivic-forge/1";

/// Series literal grammar: sum of c, t, c*t^k, t^k terms with +/- signs,
/// e.g. "t^2+3*t^5", "1+t", "0".
template <class K>
series::Series<K> parse_series_literal(const std::string& text, int precision, const K& zero);

/// Arc description as it arrives from JSON; field use depends on family.
struct ArcInput {
    std::string family;  // "slr" | "hypersurface"
    int r = 2;
    std::vector<std::vector<std::string>> matrix;
    std::string f;
    std::vector<std::string> coords;
    int precision = 16;
    std::int64_t prime = 5;  // 0 selects exact rationals
};

ArcInput parse_arc_json(const nlohmann::json& j, int default_precision = 16,
                        std::int64_t default_prime = 5);
ArcInput parse_arc_json_text(const std::string& text, int default_precision = 16,
                             std::int64_t default_prime = 5);

/// Height profile, key identity against the family's canonical divisor, and
/// the independent alternating-sum route.
nlohmann::json heights_report(const ArcInput& input);

/// Seeded random-arc identity sweep over F_p.
nlohmann::json heights_batch_report(int r, std::int64_t prime, int precision, int count, int vmin,
                                    int vmax, std::uint64_t seed, bool euler_check);

nlohmann::json groupoid_report(int r, int n, std::int64_t q, jets::Method method, int workers);
nlohmann::json cov_report_json(const jets::CovReport& rep);

crepant::SNCResolutionInput parse_resolution_json(const nlohmann::json& j);
crepant::SNCResolutionInput parse_resolution_json_text(const std::string& text);
nlohmann::json descriptor_json(const crepant::StackDescriptor& d);


}  // namespace mforge::io
