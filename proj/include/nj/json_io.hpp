#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nj/errors.hpp"
#include "nj/family.hpp"
#include "nj/inverter.hpp"
#include "nj/parse.hpp"
#include "nj/polymap.hpp"

namespace nj {

using json = nlohmann::json;

// Map file: {"n": <int>, "components": [<expr string>, ...]}

inline json map_to_json(const PolynomialMap& h) {
    json j;
    j["n"] = h.n;
    json comps = json::array();
    for (const auto& c : h.components) comps.push_back(to_string(c));
    j["components"] = comps;
    return j;
}

inline PolynomialMap map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("components"))
        throw parse_error("map file must be {\"n\":..., \"components\":[...]}", 0);
    const int n = j.at("n").get<int>();
    std::vector<Polynomial> comps;
    for (const auto& c : j.at("components")) comps.push_back(parse_polynomial(c.get<std::string>(), n));
    if (static_cast<int>(comps.size()) != n)
        throw parse_error("map file lists " + std::to_string(comps.size()) +
                              " components for n = " + std::to_string(n),
                          0);
    return PolynomialMap(n, std::move(comps));
}

// Params file (main):
//   {"n":..., "case":"main", "p":"expr in T", "a":"expr in x", "r":...,
//    "levels":[{"i":2, "P":["c0","c1",...], "b":"expr in x", "c":[...]}, ...],
//    "terminal":{"b_r":"rational"}, "free":[{"i":..., "u":"expr"}]}
// The per-level "c" lists are derived data: emitted for information,
// ignored on input.

inline json params_to_json(const FamilyParams& params) {
    json j;
    j["n"] = params.n;
    j["case"] = to_string(params.family_case());
    if (params.family_case() == FamilyCase::main) {
        const auto& mp = params.main();
        j["p"] = to_string(mp.p, "T");
        j["a"] = to_string(mp.a, "x");
        j["r"] = mp.r;
        const DerivedConstants dc = validate_params(params);
        json levels = json::array();
        for (const auto& lv : mp.levels) {
            json l;
            l["i"] = lv.i;
            json pc = json::array();
            for (const auto& c : lv.P.coeffs) pc.push_back(to_string(c));
            l["P"] = pc;
            l["b"] = to_string(lv.b, "x");
            json cs = json::array();
            for (const auto& c : dc.c[static_cast<std::size_t>(lv.i)]) cs.push_back(to_string(c, "x"));
            l["c"] = cs;
            levels.push_back(std::move(l));
        }
        j["levels"] = levels;
        json terminal;
        terminal["b_r"] = to_string(mp.b_r);
        json cs = json::array();
        for (const auto& c : dc.c[static_cast<std::size_t>(mp.r)]) cs.push_back(to_string(c, "x"));
        terminal["c"] = cs;
        j["terminal"] = terminal;
    } else if (params.family_case() == FamilyCase::cor1) {
        const auto& cp = params.cor1();
        j["lambda1"] = to_string(cp.lambda1);
        j["lambda2"] = to_string(cp.lambda2);
        j["c1"] = to_string(cp.c1);
        j["c2"] = to_string(cp.c2);
        j["f"] = to_string(cp.f, "T");
    } else {
        const auto& cp = params.cor2();
        j["u"] = to_string(cp.u);
        j["r"] = cp.r;
        json chain = json::array();
        for (const auto& [i, ui] : cp.chain) {
            json e;
            e["i"] = i;
            e["u"] = to_string(ui);
            chain.push_back(std::move(e));
        }
        j["chain"] = chain;
        j["u_r"] = to_string(cp.u_r);
    }
    json freelist = json::array();
    for (const auto& fc : params.free) {
        json e;
        e["i"] = fc.i;
        e["u"] = to_string(fc.u);
        freelist.push_back(std::move(e));
    }
    j["free"] = freelist;
    return j;
}

inline FamilyParams params_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("case"))
        throw parse_error("params file must carry \"n\" and \"case\"", 0);
    FamilyParams params;
    params.n = j.at("n").get<int>();
    const std::string kase = j.at("case").get<std::string>();
    if (kase == "main") {
        MainParams mp;
        mp.p = parse_univariate(j.at("p").get<std::string>(), 'T');
        mp.a = j.contains("a") ? parse_univariate(j.at("a").get<std::string>(), 'x') : Polynomial(1);
        mp.r = j.at("r").get<int>();
        if (j.contains("levels")) {
            for (const auto& l : j.at("levels")) {
                MainLevel lv;
                lv.i = l.at("i").get<int>();
                for (const auto& c : l.at("P")) lv.P.coeffs.push_back(parse_rational(c.get<std::string>()));
                if (l.contains("b")) lv.b = parse_univariate(l.at("b").get<std::string>(), 'x');
                mp.levels.push_back(std::move(lv));
            }
        }
        if (j.contains("terminal") && j.at("terminal").contains("b_r"))
            mp.b_r = parse_rational(j.at("terminal").at("b_r").get<std::string>());
        params.data = std::move(mp);
    } else if (kase == "cor1") {
        Cor1Params cp;
        cp.lambda1 = parse_rational(j.at("lambda1").get<std::string>());
        cp.lambda2 = parse_rational(j.at("lambda2").get<std::string>());
        if (j.contains("c1")) cp.c1 = parse_rational(j.at("c1").get<std::string>());
        if (j.contains("c2")) cp.c2 = parse_rational(j.at("c2").get<std::string>());
        cp.f = parse_univariate(j.at("f").get<std::string>(), 'T');
        params.data = std::move(cp);
    } else if (kase == "cor2") {
        Cor2Params cp;
        cp.u = parse_rational(j.at("u").get<std::string>());
        cp.r = j.at("r").get<int>();
        if (j.contains("chain")) {
            for (const auto& e : j.at("chain"))
                cp.chain.emplace_back(e.at("i").get<int>(),
                                      parse_polynomial(e.at("u").get<std::string>(), params.n));
        }
        cp.u_r = j.contains("u_r") ? parse_polynomial(j.at("u_r").get<std::string>(), params.n)
                                   : Polynomial(params.n);
        params.data = std::move(cp);
    } else {
        throw parse_error("unknown case '" + kase + "' (expected main|cor1|cor2)", 0);
    }
    if (j.contains("free")) {
        for (const auto& e : j.at("free"))
            params.free.push_back(
                {e.at("i").get<int>(), parse_polynomial(e.at("u").get<std::string>(), params.n)});
    }
    return params;
}

// Factor-sequence file:
//   {"n":..., "factors":[{"kind":"elementary","i":..., "a":"expr"}
//                        | {"kind":"translation","c":[...]}
//                        | {"kind":"linear","m":[[...]]}],
//    "elementary_only": bool}

inline json factors_to_json(const FactorSequence& seq) {
    json j;
    j["n"] = seq.n;
    json fs = json::array();
    for (const auto& f : seq.factors) {
        json e;
        if (const auto* el = std::get_if<ElementaryFactor>(&f)) {
            e["kind"] = "elementary";
            e["i"] = el->i;
            e["a"] = to_string(el->a);
        } else if (const auto* tr = std::get_if<TranslationFactor>(&f)) {
            e["kind"] = "translation";
            json c = json::array();
            for (const auto& v : tr->c) c.push_back(to_string(v));
            e["c"] = c;
        } else {
            const auto& lin = std::get<LinearFactor>(f);
            e["kind"] = "linear";
            json rows = json::array();
            for (const auto& row : lin.m) {
                json r = json::array();
                for (const auto& v : row) r.push_back(to_string(v));
                rows.push_back(std::move(r));
            }
            e["m"] = rows;
        }
        fs.push_back(std::move(e));
    }
    j["factors"] = fs;
    j["elementary_only"] = seq.elementary_only();
    return j;
}

inline FactorSequence factors_from_json(const json& j) {
    FactorSequence seq;
    seq.n = j.at("n").get<int>();
    for (const auto& e : j.at("factors")) {
        const std::string kind = e.at("kind").get<std::string>();
        if (kind == "elementary") {
            seq.factors.push_back(make_elementary(
                e.at("i").get<int>(), parse_polynomial(e.at("a").get<std::string>(), seq.n)));
        } else if (kind == "translation") {
            std::vector<Rational> c;
            for (const auto& v : e.at("c")) c.push_back(parse_rational(v.get<std::string>()));
            seq.factors.push_back(make_translation(std::move(c)));
        } else if (kind == "linear") {
            QMatrix m;
            for (const auto& row : e.at("m")) {
                std::vector<Rational> r;
                for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
                m.push_back(std::move(r));
            }
            seq.factors.push_back(make_linear(std::move(m)));
        } else {
            throw parse_error("unknown factor kind '" + kind + "'", 0);
        }
    }
    return seq;
}

inline json kernel_to_json(const std::vector<std::vector<Rational>>& kernel) {
    json rows = json::array();
    for (const auto& v : kernel) {
        json row = json::array();
        for (const auto& x : v) row.push_back(to_string(x));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON in ") + path + ": " + e.what(),
                          static_cast<std::size_t>(e.byte));
    }
    return j;
}

/// Writes through a temporary file in the same directory, then renames.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

} // namespace nj
