#pragma once
// Curve models and the bundled catalog (data/catalog.json): hyperelliptic
// and elliptic Weierstrass models, plane curves given by monomial tables,
// and canonical models cut out by quadrics in P^n. Rational constants are
// stored as strings in the JSON and parsed exactly.

#include "ag/rings.hpp"
#include "ag/poly.hpp"
#include "ag/numfield.hpp"
#include <json.hpp>
#include <array>
#include <fstream>
#include <map>
#include <optional>

namespace ag {

using nlohmann::json;

// Exponent-vector keyed homogeneous polynomial in a small number of variables.
struct MonomialPoly {
    int nvars = 3;
    std::map<std::vector<int>, Rat> terms;

    Rat coeff(const std::vector<int>& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Rat(0) : it->second;
    }

    template <class F>
    typename F::Elt eval(const F& K, const std::vector<typename F::Elt>& xs) const {
        auto acc = K.zero();
        for (auto& [e, c] : terms) {
            auto t = K.from_rat(c);
            for (int i = 0; i < nvars; ++i)
                for (int j = 0; j < e[i]; ++j) t = K.mul(t, xs[i]);
            acc = K.add(acc, t);
        }
        return acc;
    }

    int degree() const {
        int d = 0;
        for (auto& [e, c] : terms) {
            (void)c;
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
};

// Quadratic form on P^{n-1} stored as coefficient of x_i x_j for i <= j.
struct QuadraticForm {
    int nvars = 0;
    std::map<std::pair<int, int>, Rat> coef;

    template <class F>
    typename F::Elt eval(const F& K, const std::vector<typename F::Elt>& xs) const {
        auto acc = K.zero();
        for (auto& [ij, c] : coef) {
            auto t = K.mul(K.from_rat(c), K.mul(xs[ij.first], xs[ij.second]));
            acc = K.add(acc, t);
        }
        return acc;
    }
};

struct HyperellipticModel {
    int genus = 0;
    std::vector<Rat> f; // ascending coefficients of f(x), y^2 = f(x)

    template <class F>
    Poly<F> f_over(const F& K) const {
        Poly<F> r;
        for (auto& c : f) r.c.push_back(K.from_rat(c));
        r.trim(K);
        return r;
    }
};

struct EllipticModel {
    std::array<Rat, 5> a; // a1, a2, a3, a4, a6
};

struct AlgebraicPoint {
    // projective point with coordinates in Q(theta)
    std::vector<Rat> minpoly; // ascending; degree 1 constant -> rational point
    std::vector<std::vector<Rat>> coords; // each coordinate as poly in theta
};

struct LinearForm {
    std::map<int, Rat> coef; // variable index -> coefficient
};

struct QuadricModel {
    int nvars = 0;
    std::vector<QuadraticForm> quadrics;
    std::vector<int> involution_diag;
    std::optional<QuadraticForm> cover_form; // z^2 = g for double covers
    std::optional<std::pair<LinearForm, LinearForm>> map_to_line;
};

struct Catalog {
    json root;

    static Catalog load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("catalog: cannot open " + path);
        Catalog c;
        in >> c.root;
        return c;
    }
    static Catalog load_default() {
        return load(std::string(AG_DATA_DIR) + "/catalog.json");
    }

    const json& curve(const std::string& name) const {
        auto& cs = root.at("curves");
        if (!cs.contains(name)) throw std::runtime_error("catalog: no curve " + name);
        return cs.at(name);
    }

    HyperellipticModel hyperelliptic(const std::string& name) const {
        const json& j = curve(name);
        HyperellipticModel m;
        m.genus = j.at("genus").get<int>();
        for (auto& s : j.at("f")) m.f.push_back(parse_rat(s.get<std::string>()));
        return m;
    }

    EllipticModel elliptic(const std::string& name) const {
        const json& j = curve(name);
        EllipticModel m;
        auto& al = j.at("a_list");
        for (int i = 0; i < 5; ++i) m.a[i] = parse_rat(al.at(i).get<std::string>());
        return m;
    }

    static std::vector<int> parse_expvec(const std::string& key) {
        std::vector<int> e;
        size_t pos = 0;
        while (pos <= key.size()) {
            size_t dot = key.find('.', pos);
            if (dot == std::string::npos) dot = key.size();
            e.push_back(std::stoi(key.substr(pos, dot - pos)));
            pos = dot + 1;
        }
        return e;
    }

    static MonomialPoly parse_monomials(const json& j, int nvars) {
        MonomialPoly m;
        m.nvars = nvars;
        for (auto it = j.begin(); it != j.end(); ++it) {
            auto e = parse_expvec(it.key());
            e.resize(nvars, 0);
            m.terms[e] = parse_rat(it.value().get<std::string>());
        }
        return m;
    }

    MonomialPoly plane_equation(const std::string& name) const {
        const json& j = curve(name);
        int nv = (int)j.at("variables").size();
        return parse_monomials(j.at("monomials"), nv);
    }

    std::vector<MonomialPoly> adjoints(const std::string& name) const {
        const json& j = curve(name);
        std::vector<MonomialPoly> out;
        for (auto& a : j.at("adjoint_cubics"))
            out.push_back(parse_monomials(a, 3));
        return out;
    }

    static QuadraticForm parse_quadric(const json& j, int nvars) {
        QuadraticForm q;
        q.nvars = nvars;
        for (auto it = j.begin(); it != j.end(); ++it) {
            auto e = parse_expvec(it.key());
            q.coef[{e[0], e[1]}] = parse_rat(it.value().get<std::string>());
        }
        return q;
    }

    QuadricModel quadric_model(const std::string& name) const {
        const json& j = curve(name);
        QuadricModel m;
        m.nvars = j.at("ambient_dim").get<int>() + 1;
        for (auto& q : j.at("quadrics"))
            m.quadrics.push_back(parse_quadric(q, m.nvars));
        if (j.contains("involution_diag"))
            for (auto& v : j.at("involution_diag"))
                m.involution_diag.push_back(v.get<int>());
        if (j.contains("cover_form_g"))
            m.cover_form = parse_quadric(j.at("cover_form_g"), m.nvars);
        if (j.contains("map_to_ns7")) {
            auto parse_lin = [](const json& lj) {
                LinearForm f;
                for (auto it = lj.begin(); it != lj.end(); ++it)
                    f.coef[std::stoi(it.key())] = parse_rat(it.value().get<std::string>());
                return f;
            };
            m.map_to_line = {parse_lin(j.at("map_to_ns7").at("numerator")),
                             parse_lin(j.at("map_to_ns7").at("denominator"))};
        }
        return m;
    }

    static AlgebraicPoint parse_point(const json& j) {
        AlgebraicPoint p;
        for (auto& c : j.at("minpoly")) p.minpoly.push_back(parse_rat(c.get<std::string>()));
        for (auto& coord : j.at("coords")) {
            std::vector<Rat> cs;
            for (auto& c : coord) cs.push_back(parse_rat(c.get<std::string>()));
            p.coords.push_back(cs);
        }
        return p;
    }

    std::vector<std::pair<std::string, AlgebraicPoint>> algebraic_points(
        const std::string& name) const {
        const json& j = curve(name);
        std::vector<std::pair<std::string, AlgebraicPoint>> out;
        for (auto it = j.at("points").begin(); it != j.at("points").end(); ++it)
            out.push_back({it.key(), parse_point(it.value())});
        return out;
    }

    std::vector<Rat> rational_projective_point(const std::string& name,
                                               const std::string& label) const {
        const json& j = curve(name);
        std::vector<Rat> out;
        for (auto& c : j.at("rational_points").at(label))
            out.push_back(parse_rat(c.get<std::string>()));
        return out;
    }
};

} // namespace ag
