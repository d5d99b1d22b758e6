#include "mforge/io.hpp"

#include <cctype>

namespace mforge::io {

using nlohmann::json;
using series::Fp;
using series::Mat;
using series::Rat;
using series::Series;

namespace {

mpq_class parse_rational_string(const std::string& s) {
    if (s.empty()) fail(errc::parse_error, "empty rational literal");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '/')
            fail(errc::parse_error, "bad rational literal '" + s + "'");
    mpq_class q(s);
    q.canonicalize();
    return q;
}

template <class K>
K coeff_from_mpq(const mpq_class& c, const K& zero);

template <>
Rat coeff_from_mpq<Rat>(const mpq_class& c, const Rat&) {
    return Rat(c);
}

template <>
Fp coeff_from_mpq<Fp>(const mpq_class& c, const Fp& zero) {
    std::int64_t p = zero.modulus();
    Fp num(mpz_class(c.get_num() % p).get_si(), p);
    Fp den(mpz_class(c.get_den() % p).get_si(), p);
    if (is_zero(den)) fail(errc::invalid_input, "coefficient denominator vanishes in F_p");
    return num / den;
}

}  // namespace

template <class K>
Series<K> parse_series_literal(const std::string& text, int precision, const K& zero) {
    Series<K> acc = Series<K>::zeros(precision, zero);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto parse_int = [&]() -> mpq_class {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail(errc::parse_error, "expected digits in series literal at " + std::to_string(start));
        return mpq_class(text.substr(start, pos - start));
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (pos >= text.size()) {
            if (first) fail(errc::parse_error, "empty series literal");
            break;
        }
        bool neg = false;
        if (text[pos] == '+' || text[pos] == '-') {
            neg = text[pos] == '-';
            ++pos;
            skip_ws();
        } else if (!first) {
            fail(errc::parse_error, "expected '+' or '-' in series literal at " + std::to_string(pos));
        }
        first = false;
        mpq_class coeff(1);
        bool saw_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = parse_int();
            saw_coeff = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '/') {  // rational coefficient
                ++pos;
                skip_ws();
                coeff /= parse_int();
                coeff.canonicalize();
                skip_ws();
            }
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }
        long power = 0;
        if (pos < text.size() && text[pos] == 't') {
            ++pos;
            power = 1;
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip_ws();
                power = mpz_class(parse_int().get_num()).get_si();
            }
        } else if (!saw_coeff) {
            fail(errc::parse_error, "expected coefficient or 't' at " + std::to_string(pos));
        }
        if (neg) coeff = -coeff;
        if (power < 0) fail(errc::parse_error, "negative power in series literal");
        if (power < precision)
            acc = acc + Series<K>::monomial(coeff_from_mpq(coeff, zero), static_cast<int>(power), precision);
    }
    return acc;
}

template Series<Rat> parse_series_literal<Rat>(const std::string&, int, const Rat&);
template Series<Fp> parse_series_literal<Fp>(const std::string&, int, const Fp&);

ArcInput parse_arc_json(const json& j, int default_precision, std::int64_t default_prime) {
    ArcInput a;
    if (!j.is_object()) fail(errc::parse_error, "arc input must be a JSON object");
    a.family = j.value("family", std::string("slr"));
    a.precision = j.value("precision", default_precision);
    a.prime = j.value("prime", default_prime);
    if (a.precision < 2 || a.precision > 64) fail(errc::invalid_input, "precision out of range [2, 64]");
    if (a.family == "slr") {
        if (!j.contains("matrix")) fail(errc::parse_error, "slr arc needs a \"matrix\" field");
        a.r = j.value("r", static_cast<int>(j["matrix"].size()));
        for (const auto& row : j["matrix"]) {
            std::vector<std::string> entries;
            for (const auto& cell : row) entries.push_back(cell.get<std::string>());
            a.matrix.push_back(std::move(entries));
        }
    } else if (a.family == "hypersurface") {
        if (!j.contains("f") || !j.contains("coords"))
            fail(errc::parse_error, "hypersurface arc needs \"f\" and \"coords\"");
        a.f = j["f"].get<std::string>();
        for (const auto& c : j["coords"]) a.coords.push_back(c.get<std::string>());
    } else {
        fail(errc::unsupported_family, "unknown family '" + a.family + "'");
    }
    return a;
}

ArcInput parse_arc_json_text(const std::string& text, int default_precision,
                             std::int64_t default_prime) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse_error, "malformed JSON");
    return parse_arc_json(j, default_precision, default_prime);
}


namespace {

json valuation_json(const Valuation& v) {
    if (v.is_exact) return json(v.value);
    return json(">=" + std::to_string(v.value));
}

template <class K>
json heights_report_impl(const ArcInput& input, const K& zero) {
    json out;
    out["schema"] = kSchema;
    out["family"] = input.family;
    out["precision"] = input.precision;
    out["prime"] = input.prime;

    if (input.family == "hypersurface") {
        poly::Poly f = poly::Poly::parse(input.f);
        std::vector<Series<K>> coords;
        for (const std::string& c : input.coords)
            coords.push_back(parse_series_literal<K>(c, input.precision, zero));
        auto arc = heights::ArcOnCover<K>::hypersurface(f, coords);
        out["jacobian_order"] = valuation_json(heights::jacobian_order(f, arc.coords));
        return out;
    }

    int r = input.r;
    if (static_cast<int>(input.matrix.size()) != r) fail(errc::invalid_input, "matrix size mismatch");
    Mat<K> a(r, r, Series<K>::zeros(input.precision, zero));
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(input.matrix[static_cast<size_t>(i)].size()) != r)
            fail(errc::invalid_input, "matrix size mismatch");
        for (int j = 0; j < r; ++j)
            a.at(i, j) = parse_series_literal<K>(input.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                                 input.precision, zero);
    }
    auto arc = heights::ArcOnCover<K>::slr(r, a);
    auto pres = heights::build_presentation(arc);
    auto profile = heights::height_profile(pres, arc);
    out["r"] = r;
    out["profile"] = {{"ht_minus1", valuation_json(profile.ht_minus1)},
                      {"ht0", valuation_json(profile.ht0)},
                      {"ht1", valuation_json(profile.ht1)}};

    divisor::DivisorSum k = divisor::DivisorSum::single("D'", mpq_class(1 - r));
    auto identity = heights::check_key_identity(arc, 1, k);
    out["val_det"] = identity.val_det;
    out["identity"] = {{"K", k.str()},          {"m", 1},
                       {"lhs", identity.lhs},   {"rhs", identity.rhs},
                       {"ord_jacobian", identity.ord_jacobian}, {"pass", identity.pass}};

    int euler = heights::euler_valuation_of_arc(arc);
    out["euler_valuation"] = euler;
    bool euler_ok = profile.ht0.is_exact && profile.ht1.is_exact &&
                    euler == profile.ht0.value - profile.ht1.value;
    out["euler_matches_profile"] = euler_ok;
    out["pass"] = identity.pass && euler_ok;
    return out;
}

}  // namespace

json heights_report(const ArcInput& input) {
    if (input.prime == 0) return heights_report_impl<Rat>(input, Rat(0));
    if (!series::is_prime64(input.prime) || input.prime > 97)
        fail(errc::invalid_input, "prime must be a prime <= 97 (or 0 for rationals)");
    return heights_report_impl<Fp>(input, Fp(0, input.prime));
}

json heights_batch_report(int r, std::int64_t prime, int precision, int count, int vmin, int vmax,
                          std::uint64_t seed, bool euler_check) {
    if (!series::is_prime64(prime) || prime > 97) fail(errc::invalid_input, "batch mode needs a prime <= 97");
    if (vmin < 1 || vmax < vmin) fail(errc::invalid_input, "bad valuation range");
    std::mt19937_64 rng(seed);
    json out;
    out["schema"] = kSchema;
    out["family"] = "slr";
    out["r"] = r;
    out["prime"] = prime;
    out["precision"] = precision;
    out["seed"] = seed;
    out["count"] = count;
    out["val_range"] = {vmin, vmax};

    divisor::DivisorSum k = divisor::DivisorSum::single("D'", mpq_class(1 - r));
    json failures = json::array();
    int checked = 0;
    long attempts = 0;
    const long attempt_cap = 2000L * count;
    while (checked < count && attempts < attempt_cap) {
        ++attempts;
        Mat<Fp> a = heights::random_slr_matrix(rng, r, prime, precision, precision);
        Valuation v = series::laplace_det(a).valuation();
        if (!v.is_exact || v.value < vmin || v.value > vmax) continue;
        auto arc = heights::ArcOnCover<Fp>::slr(r, a);
        auto rep = heights::check_key_identity(arc, 1, k);
        bool ok = rep.pass;
        if (euler_check && ok) {
            int euler = heights::euler_valuation_of_arc(arc);
            ok = euler == rep.profile.ht0.value - rep.profile.ht1.value;
        }
        if (!ok && failures.size() < 8) {
            failures.push_back({{"val_det", rep.val_det}, {"lhs", rep.lhs}, {"rhs", rep.rhs}});
        }
        ++checked;
    }
    out["checked"] = checked;
    out["all_pass"] = failures.empty() && checked == count;
    out["failures"] = failures;
    return out;
}

namespace {

std::string cylinder_symbolic(int k) {
    if (k == 0) return "(L-1)";
    if (k == 1) return "(L-1)*L";
    return "(L-1)*L^" + std::to_string(k);
}

}  // namespace

json groupoid_report(int r, int n, std::int64_t q, jets::Method method, int workers) {
    jets::GroupoidCount gc = jets::groupoid_count(r, n, q, method, workers);
    motivic::MotivicElement expected =
        motivic::torus_class() * motivic::MotivicElement::lefschetz_power(mpq_class(n - r));
    mpq_class expected_value = motivic::evaluate_at(expected, mpz_class(static_cast<long>(q)));
    json out;
    out["schema"] = kSchema;
    out["r"] = r;
    out["n"] = n;
    out["q"] = q;
    out["numerator"] = gc.numerator.get_si();
    out["denominator"] = gc.denominator.get_si();
    out["value"] = gc.value.get_str();
    out["symbolic"] = cylinder_symbolic(n - r);
    out["match"] = gc.value == expected_value;
    return out;
}

json cov_report_json(const jets::CovReport& rep) {
    json out;
    out["schema"] = kSchema;
    out["case"] = rep.case_name;
    out["r"] = rep.r;
    out["mu_gor_base"] = rep.mu_gor_base.str();
    out["mu_cover"] = rep.mu_cover.str();
    out["ord_on_cylinder"] = rep.ord_on_cylinder;
    out["shift"] = rep.shift.get_str();
    out["coefficient"] = rep.coefficient.get_str();
    out["expected_coefficient"] = rep.expected_coefficient.get_str();
    out["symbolic_pass"] = rep.symbolic_pass;
    json checks = json::array();
    for (const auto& c : rep.numeric)
        checks.push_back({{"what", c.what},
                          {"r", c.r},
                          {"n", c.n},
                          {"q", c.q},
                          {"value", c.value},
                          {"expected", c.expected},
                          {"match", c.match}});
    out["numeric_checks"] = checks;
    out["pass"] = rep.pass;
    return out;
}

crepant::SNCResolutionInput parse_resolution_json(const json& j) {
    if (!j.is_object()) fail(errc::parse_error, "resolution input must be a JSON object");
    crepant::SNCResolutionInput in;
    in.name = j.value("name", std::string("resolution"));
    in.gorenstein_index = j.value("gorenstein_index", 1L);
    if (!j.contains("divisors") || !j["divisors"].is_array())
        fail(errc::parse_error, "resolution input needs a \"divisors\" array");
    for (const auto& d : j["divisors"]) {
        crepant::SNCDivisor div;
        div.label = d.at("label").get<std::string>();
        if (d.at("discrepancy").is_number_integer()) {
            div.discrepancy = mpq_class(d["discrepancy"].get<long>());
        } else {
            div.discrepancy = parse_rational_string(d["discrepancy"].get<std::string>());
        }
        div.denominator_override = d.value("denominator_override", 0L);
        in.divisors.push_back(std::move(div));
    }
    return in;
}

crepant::SNCResolutionInput parse_resolution_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse_error, "malformed JSON");
    return parse_resolution_json(j);
}

json descriptor_json(const crepant::StackDescriptor& d) {
    json out;
    out["schema"] = kSchema;
    out["name"] = d.name;
    out["convention"] = crepant::convention_name(d.convention);
    json factors = json::array();
    for (const auto& f : d.factors)
        factors.push_back({{"label", f.label},
                           {"r", f.r},
                           {"d", f.d},
                           {"rank", f.rank},
                           {"coefficient", f.coefficient.get_str()}});
    out["factors"] = factors;
    json cert = json::array();
    for (const auto& c : d.certificate)
        cert.push_back({{"label", c.label}, {"lhs", c.lhs.get_str()}, {"passes", c.passes}});
    out["certificate"] = cert;
    out["relative_canonical"] = d.relative_canonical.str();
    out["fiber_product"] = d.fiber_product;
    out["moduli"] = d.moduli_interpretation;
    out["crepant"] = d.crepant;
    return out;
}

}  // namespace mforge::io
