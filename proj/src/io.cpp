#include "preeb/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace preeb {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
        throw ParseError(std::string(what) + ": malformed JSON");
    return j;
}

json poly_to_value(const Polynomial& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["coeff"] = c;
        t["exp"] = e;
        terms.push_back(std::move(t));
    }
    json j;
    j["nvars"] = p.nvars();
    j["terms"] = std::move(terms);
    return j;
}

Polynomial poly_from_value(const json& j) {
    if (!j.is_object() || !j.contains("nvars") || !j.contains("terms"))
        throw ParseError("polynomial: expected {nvars, terms}");
    if (!j["nvars"].is_number_integer())
        throw ParseError("polynomial: nvars must be an integer");
    int nvars = j["nvars"].get<int>();
    if (nvars < 1) throw ParseError("polynomial: nvars must be >= 1");
    if (!j["terms"].is_array()) throw ParseError("polynomial: terms must be an array");

    std::set<std::vector<int>> seen;
    std::vector<std::pair<Polynomial::Exponents, double>> terms;
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("coeff") || !t.contains("exp"))
            throw ParseError("polynomial: each term needs {coeff, exp}");
        if (!t["coeff"].is_number()) throw ParseError("polynomial: coeff must be a number");
        if (!t["exp"].is_array()) throw ParseError("polynomial: exp must be an array");
        std::vector<int> e;
        for (const auto& v : t["exp"]) {
            if (!v.is_number_integer())
                throw ParseError("polynomial: exponents must be integers");
            int ev = v.get<int>();
            if (ev < 0) throw ParseError("polynomial: exponents must be >= 0");
            e.push_back(ev);
        }
        if (static_cast<int>(e.size()) != nvars)
            throw ParseError("polynomial: exponent vector arity mismatch");
        if (!seen.insert(e).second)
            throw ParseError("polynomial: duplicate exponent vector");
        terms.emplace_back(std::move(e), t["coeff"].get<double>());
    }
    return Polynomial(nvars, terms);
}

json domain_to_value(const AlgebraicDomain& dom) {
    json polys = json::array();
    for (const auto& p : dom.boundary_polys) polys.push_back(poly_to_value(p));
    json j;
    j["k"] = dom.k;
    j["bound"] = dom.bound;
    j["boundary_polys"] = std::move(polys);
    return j;
}

AlgebraicDomain domain_from_value(const json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("bound") ||
        !j.contains("boundary_polys"))
        throw ParseError("domain: expected {k, bound, boundary_polys}");
    if (!j["k"].is_number_integer()) throw ParseError("domain: k must be an integer");
    if (!j["bound"].is_number()) throw ParseError("domain: bound must be a number");
    if (!j["boundary_polys"].is_array())
        throw ParseError("domain: boundary_polys must be an array");
    std::vector<Polynomial> polys;
    for (const auto& pj : j["boundary_polys"]) polys.push_back(poly_from_value(pj));
    return AlgebraicDomain(j["k"].get<int>(), std::move(polys), j["bound"].get<double>());
}

json graph_to_value(const ReebGraph& g) {
    json vs = json::array();
    for (const auto& v : g.vertices()) {
        json jv;
        jv["id"] = v.id;
        jv["value"] = v.value;
        if (v.embed)
            jv["embed"] = json::array({(*v.embed)[0], (*v.embed)[1]});
        else
            jv["embed"] = nullptr;
        jv["critical"] = v.critical;
        vs.push_back(std::move(jv));
    }
    json es = json::array();
    for (const auto& e : g.edges()) {
        json je;
        je["id"] = e.id;
        je["ends"] = json::array({e.a, e.b});
        je["interval"] = json::array({e.interval.lo, e.interval.hi});
        es.push_back(std::move(je));
    }
    json j;
    j["vertices"] = std::move(vs);
    j["edges"] = std::move(es);
    return j;
}

ReebGraph graph_from_value(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw ParseError("graph: expected {vertices, edges}");
    if (!j["vertices"].is_array() || !j["edges"].is_array())
        throw ParseError("graph: vertices and edges must be arrays");

    ReebGraph g;
    std::unordered_map<int, int> remap;
    for (const auto& jv : j["vertices"]) {
        if (!jv.is_object() || !jv.contains("id") || !jv.contains("value"))
            throw ParseError("graph: each vertex needs {id, value}");
        if (!jv["id"].is_number_integer() || !jv["value"].is_number())
            throw ParseError("graph: vertex id/value types");
        int id = jv["id"].get<int>();
        std::optional<std::array<double, 2>> embed;
        if (jv.contains("embed") && !jv["embed"].is_null()) {
            if (!jv["embed"].is_array() || jv["embed"].size() != 2)
                throw ParseError("graph: embed must be [x, y] or null");
            embed = std::array<double, 2>{jv["embed"][0].get<double>(),
                                          jv["embed"][1].get<double>()};
        }
        bool critical = false;
        if (jv.contains("critical")) {
            if (!jv["critical"].is_boolean())
                throw ParseError("graph: critical must be a boolean");
            critical = jv["critical"].get<bool>();
        }
        if (!remap.emplace(id, g.add_vertex(jv["value"].get<double>(), embed, critical))
                 .second)
            throw ParseError("graph: duplicate vertex id");
    }
    for (const auto& je : j["edges"]) {
        if (!je.is_object() || !je.contains("ends") || !je.contains("interval"))
            throw ParseError("graph: each edge needs {ends, interval}");
        if (!je["ends"].is_array() || je["ends"].size() != 2)
            throw ParseError("graph: ends must be [a, b]");
        if (!je["interval"].is_array() || je["interval"].size() != 2)
            throw ParseError("graph: interval must be [lo, hi]");
        auto find = [&](const json& v) {
            if (!v.is_number_integer()) throw ParseError("graph: edge ends must be ids");
            auto it = remap.find(v.get<int>());
            if (it == remap.end()) throw ParseError("graph: edge references unknown vertex");
            return it->second;
        };
        int a = find(je["ends"][0]);
        int b = find(je["ends"][1]);
        double lo = je["interval"][0].get<double>();
        double hi = je["interval"][1].get<double>();
        if (!(lo <= hi)) throw ParseError("graph: interval must satisfy lo <= hi");
        g.add_edge(a, b, Interval(lo, hi));
    }
    return g;
}

}  // namespace

std::string polynomial_to_json(const Polynomial& p) { return poly_to_value(p).dump(2); }

Polynomial polynomial_from_json(const std::string& text) {
    return poly_from_value(parse_json(text, "polynomial"));
}

std::string domain_to_json(const AlgebraicDomain& dom) {
    return domain_to_value(dom).dump(2);
}

AlgebraicDomain domain_from_json(const std::string& text) {
    return domain_from_value(parse_json(text, "domain"));
}

std::string graph_to_json(const ReebGraph& g) { return graph_to_value(g).dump(2); }

ReebGraph graph_from_json(const std::string& text) {
    return graph_from_value(parse_json(text, "graph"));
}

std::string lift_to_jsonl(const LiftResult& lift) {
    json hdr;
    hdr["k0"] = lift.spec.k0;
    hdr["exps"] = lift.spec.exps;
    hdr["coeffs"] = lift.spec.coeffs;
    hdr["domain"] = domain_to_value(lift.spec.dom);
    hdr["n_fiber"] = lift.n_fiber;
    hdr["seed"] = lift.seed;
    hdr["pitch"] = lift.pitch;
    hdr["tau_s"] = lift.tau_s;

    std::ostringstream out;
    out << hdr.dump() << '\n';
    for (const auto& s : lift.samples) {
        json js;
        js["x"] = s.x;
        js["y"] = s.y;
        js["g"] = s.g;
        out << js.dump() << '\n';
    }
    return out.str();
}

LiftResult lift_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("lift: empty stream");
    json hdr = parse_json(line, "lift header");
    if (!hdr.is_object() || !hdr.contains("k0") || !hdr.contains("domain"))
        throw ParseError("lift: header needs {k0, domain, ...}");
    for (const char* key : {"n_fiber", "seed", "pitch", "tau_s", "exps", "coeffs"})
        if (!hdr.contains(key))
            throw ParseError(std::string("lift: header missing ") + key);

    LiftResult out;
    out.spec.dom = domain_from_value(hdr["domain"]);
    out.spec.k0 = hdr["k0"].get<int>();
    out.spec.exps = hdr["exps"].get<std::vector<int>>();
    out.spec.coeffs = hdr["coeffs"].get<std::vector<double>>();
    out.n_fiber = hdr["n_fiber"].get<int>();
    out.seed = hdr["seed"].get<std::uint64_t>();
    out.pitch = hdr["pitch"].get<double>();
    out.tau_s = hdr["tau_s"].get<double>();
    out.F = build_lift(out.spec);

    const int kp = out.spec.k0 - out.spec.dom.k;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json js = parse_json(line, "lift sample");
        if (!js.is_object() || !js.contains("x") || !js.contains("y") || !js.contains("g"))
            throw ParseError("lift: sample " + std::to_string(line_no) +
                             " needs {x, y, g}");
        LiftSample s;
        s.x = js["x"].get<std::vector<double>>();
        s.y = js["y"].get<std::vector<double>>();
        s.g = js["g"].get<double>();
        if (static_cast<int>(s.x.size()) != out.spec.dom.k ||
            static_cast<int>(s.y.size()) != kp)
            throw ParseError("lift: sample " + std::to_string(line_no) +
                             " has wrong arity");
        if (out.bases.empty() || out.bases.back() != s.x)
            out.bases.push_back(s.x);
        s.base_id = static_cast<int>(out.bases.size()) - 1;
        out.samples.push_back(std::move(s));
    }
    if (out.samples.empty()) throw ParseError("lift: no samples");
    return out;
}

std::string graph_to_dot(const ReebGraph& g) {
    ReebGraph c = g.canonical_order();
    std::ostringstream out;
    out << "graph reeb {\n";
    out << "  node [shape=circle];\n";
    char buf[64];
    for (const auto& v : c.vertices()) {
        std::snprintf(buf, sizeof(buf), "%.4f", v.value);
        out << "  v" << v.id << " [label=\"" << buf << " d" << c.degree(v.id) << "\"];\n";
    }
    for (const auto& e : c.edges()) out << "  v" << e.a << " -- v" << e.b << ";\n";
    out << "}\n";
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace preeb
