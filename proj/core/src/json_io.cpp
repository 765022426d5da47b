#include "trop/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace trop {

json to_json(const QLaurent& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, rat_str(c)}));
    return json{{"exponents_q", terms}};
}

QLaurent qlaurent_from_json(const json& j) {
    QLaurent p;
    for (const auto& t : j.at("exponents_q"))
        p.add_term(t.at(0).get<int>(), parse_rat(t.at(1).get<std::string>()));
    return p;
}

json to_json(const YLaurent& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, rat_str(c)}));
    return json{{"exponents_q", terms}, {"variable", "y"}};
}

YLaurent ylaurent_from_json(const json& j) {
    if (j.value("variable", "") != "y") throw std::invalid_argument("expected a y-polynomial");
    std::map<int, Rat> m;
    for (const auto& t : j.at("exponents_q"))
        m[t.at(0).get<int>()] = parse_rat(t.at(1).get<std::string>());
    return YLaurent(std::move(m));
}

json to_json(const Degree& deg) {
    json ends = json::array();
    for (const auto& v : deg.ends) ends.push_back(json::array({v.x, v.y}));
    json fixed = json::array();
    for (int j : deg.fixed) fixed.push_back(j);
    return json{{"ends", ends}, {"fixed", fixed}};
}

Degree degree_from_json(const json& j) {
    Degree deg;
    for (const auto& e : j.at("ends"))
        deg.ends.push_back({e.at(0).get<long long>(), e.at(1).get<long long>()});
    for (const auto& f : j.value("fixed", json::array())) deg.fixed.insert(f.get<int>());
    deg.validate();
    return deg;
}

json to_json(const Config& cfg) {
    json points = json::array();
    for (const auto& p : cfg.points) points.push_back(json::array({rat_str(p.x), rat_str(p.y)}));
    json lines = json::array();
    for (const auto& l : cfg.lines)
        lines.push_back(json{{"end", l.end_label},
                             {"covector", json::array({l.covector.x, l.covector.y})},
                             {"value", rat_str(l.value)}});
    json fixed = json::array();
    for (int j : cfg.fixed) fixed.push_back(j);
    return json{{"points", points}, {"lines", lines}, {"r", cfg.r}, {"s", cfg.s}, {"fixed", fixed}};
}

Config config_from_json(const json& j) {
    Config cfg;
    cfg.r = j.at("r").get<int>();
    cfg.s = j.at("s").get<int>();
    for (const auto& p : j.at("points"))
        cfg.points.push_back({parse_rat(p.at(0).get<std::string>()), parse_rat(p.at(1).get<std::string>())});
    for (const auto& l : j.value("lines", json::array())) {
        LineCondition lc;
        lc.end_label = l.at("end").get<int>();
        lc.covector = {l.at("covector").at(0).get<long long>(), l.at("covector").at(1).get<long long>()};
        lc.value = parse_rat(l.at("value").get<std::string>());
        cfg.lines.push_back(lc);
    }
    for (const auto& f : j.value("fixed", json::array())) cfg.fixed.push_back(f.get<int>());
    return cfg;
}

json to_json(const CombType& comb) {
    json edges = json::array();
    for (const auto& e : comb.edges)
        edges.push_back(json{{"from", e.from}, {"to", e.to}, {"dir", json::array({e.dir.x, e.dir.y})}});
    json ends = json::array();
    for (const auto& e : comb.ends)
        ends.push_back(json{{"vertex", e.vertex}, {"label", e.label}, {"dir", json::array({e.dir.x, e.dir.y})}});
    json marks = json::array();
    for (const auto& m : comb.markings)
        marks.push_back(json{{"vertex", m.vertex},
                             {"label", m.label},
                             {"kind", m.kind == MarkKind::Real ? "real" : "complex"}});
    return json{{"vertices", comb.num_vertices}, {"edges", edges}, {"ends", ends}, {"markings", marks}};
}

json to_json(const PlacedCurve& curve) {
    json j = to_json(curve.comb);
    j["anchor"] = json::array({rat_str(curve.anchor.x), rat_str(curve.anchor.y)});
    json lengths = json::object();
    for (size_t i = 0; i < curve.lengths.size(); ++i)
        lengths[std::to_string(i)] = rat_str(curve.lengths[i]);
    j["lengths"] = lengths;
    return j;
}

json to_json(const InvariantResult& res) {
    json fixed = json::array();
    for (int j : res.degree.fixed) fixed.push_back(j);
    json seeds = json::array();
    for (auto s : res.seeds) seeds.push_back(s);
    return json{{"invariant", res.name},
                {"degree", to_json(res.degree)},
                {"r", res.r},
                {"s", res.s},
                {"fixed", fixed},
                {"seeds", seeds},
                {"value", to_json(res.value)},
                {"curves", res.curve_count},
                {"g_order", res.g_order}};
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const RunManifest& m) {
    json flags = json::object();
    for (const auto& [k, v] : m.flags) flags[k] = v;
    json seeds = json::array();
    for (auto s : m.seeds) seeds.push_back(s);
    json hashes = json::object();
    for (const auto& [k, v] : m.input_hashes) hashes[k] = v;
    return json{{"command", m.command},       {"flags", flags},
                {"seeds", seeds},             {"engine_version", m.engine_version},
                {"input_hashes", hashes},     {"duration_ms", m.duration_ms}};
}

} // namespace trop
