#include "hermeig/domain_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hermeig/errors.hpp"

namespace hermeig {

namespace {

using nlohmann::json;

Profile poly_profile(const std::vector<double>& coeffs, double a) {
    auto eval = [coeffs](double x) {
        double s = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) s = s * x + coeffs[i];
        return s;
    };
    auto d1 = [coeffs](double x) {
        double s = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 1;) s = s * x + i * coeffs[i];
        return s;
    };
    auto d2 = [coeffs](double x) {
        double s = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 2;) s = s * x + i * (i - 1) * coeffs[i];
        return s;
    };
    return Profile::callable(eval, d1, d2, -a, a);
}

std::vector<Vec2> parse_points(const json& arr) {
    std::vector<Vec2> pts;
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2) throw ValidationError("domain file: point must be [x, y]");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return pts;
}

}  // namespace

Domain domain_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("domain file: invalid JSON: ") + e.what());
    }
    if (!j.contains("kind")) throw ValidationError("domain file: missing \"kind\"");
    const std::string kind = j["kind"].get<std::string>();

    Domain raw;
    if (kind == "rectangle") {
        raw = Domain::rectangle(j.at("a").get<double>(), j.at("b").get<double>());
    } else if (kind == "square") {
        raw = Domain::square(j.at("l").get<double>());
    } else if (kind == "strip") {
        raw = Domain::strip(j.at("a").get<double>());
    } else if (kind == "half_strip") {
        raw = Domain::half_strip(j.at("a").get<double>(), j.at("top").get<double>());
    } else if (kind == "disk") {
        raw = Domain::disk(j.at("R").get<double>());
    } else if (kind == "convex_polygon") {
        raw = Domain::convex_polygon(parse_points(j.at("vertices")));
    } else if (kind == "dumbbell") {
        raw = Domain::dumbbell(j.at("side").get<double>(), j.at("corridor_len").get<double>(),
                               j.at("corridor_width").get<double>());
    } else if (kind == "profile") {
        const double a = j.at("a").get<double>();
        Profile p;
        if (j.contains("p_poly")) {
            p = poly_profile(j["p_poly"].get<std::vector<double>>(), a);
        } else if (j.contains("p_samples")) {
            const auto pts = parse_points(j["p_samples"]);
            std::vector<double> xs, ys;
            for (const Vec2& v : pts) {
                xs.push_back(v.x);
                ys.push_back(v.y);
            }
            p = Profile::from_samples(xs, ys);
        } else {
            throw ValidationError("domain file: profile needs p_poly or p_samples");
        }
        const std::string q = j.value("q", "mirror");
        if (q == "unbounded") raw = Domain::profile_unbounded(a, std::move(p));
        else if (q == "mirror") {
            Profile neg = p.negated();
            raw = Domain::profile(a, std::move(p), std::move(neg));
        } else throw ValidationError("domain file: q must be \"mirror\" or \"unbounded\"");
    } else {
        throw ValidationError("domain file: unknown kind \"" + kind + "\"");
    }
    if (j.contains("id")) raw.id = j["id"].get<std::string>();
    return build_domain(std::move(raw));
}

Domain load_domain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open domain file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return domain_from_json(ss.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::vector<Domain> load_domain_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error("domain directory not found: " + dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<Domain> out;
    out.reserve(files.size());
    for (const std::string& f : files) out.push_back(load_domain_file(f));
    return out;
}

}  // namespace hermeig
