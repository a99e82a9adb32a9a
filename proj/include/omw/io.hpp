#pragma once

#include <fstream>
#include <sstream>

#include "omw/chirotope.hpp"
#include "omw/polysystem.hpp"
#include "omw/solve.hpp"

namespace omw {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Line format: `n r signstring` with the signstring over {+,-,0} in
/// lexicographic Lambda(n,r) order.
inline Chirotope parse_chirotope_line(const std::string& line, bool validate_axioms = false) {
    std::istringstream is(line);
    int n = 0, r = 0;
    std::string s;
    if (!(is >> n >> r >> s)) throw std::invalid_argument("chirotope line: expected `n r signstring`");
    if (n < 1 || r < 1 || r > n) throw std::invalid_argument("chirotope line: invalid n/r");
    long long want = binomial(n, r);
    if (static_cast<long long>(s.size()) != want)
        throw std::invalid_argument("chirotope line: expected " + std::to_string(want) + " signs, got " +
                                    std::to_string(s.size()));
    Chirotope chi = chirotope_from_string(n, r, s);
    if (validate_axioms) {
        AxiomCheck c = check_axioms(chi);
        if (!c.valid()) throw std::invalid_argument("chirotope line: not a chirotope (axiom check failed)");
    }
    return chi;
}

inline std::string format_chirotope_line(const Chirotope& chi) {
    return std::to_string(chi.n) + " " + std::to_string(chi.r) + " " + chi.sign_string();
}

/// Witness file: r lines of n rationals `p/q` separated by spaces.
inline void write_witness_file(const Realization& V, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open witness file for writing: " + path);
    for (int row = 0; row < V.r; ++row) {
        for (int col = 1; col <= V.n; ++col) {
            if (col > 1) out << ' ';
            out << V.rows[row][col - 1];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("error writing witness file: " + path);
}

inline Realization read_witness_file(const std::string& path, int n, int r) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open witness file: " + path);
    Realization V;
    V.n = n;
    V.r = r;
    V.rows.assign(r, std::vector<Rational>(n));
    for (int row = 0; row < r; ++row)
        for (int col = 0; col < n; ++col) {
            std::string tok;
            if (!(in >> tok)) throw std::runtime_error("witness file truncated: " + path);
            V.rows[row][col] = rational_from_string(tok);
        }
    return V;
}

/// Debug text format: terms as `coef * x<id>^<e> * ...` joined by ` + `,
/// constraints as `<poly> > 0` / `<poly> = 0`.
inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        if (!first) out += " + ";
        first = false;
        out += to_string(c);
        for (auto& [v, e] : m.powers) {
            out += " * x" + std::to_string(v);
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

inline std::string to_string(const Constraint& c) {
    return to_string(c.poly) + (c.rel == Rel::greater_than_zero ? " > 0" : " = 0");
}

inline std::string to_string(const PolySystem& P) {
    std::string out = "variables:";
    for (int v : P.variables) out += " x" + std::to_string(v) + ">0";
    out += "\n";
    for (const Constraint& c : P.constraints) out += to_string(c) + "\n";
    return out;
}

/// Parses the debug polynomial format back (round-trip inverse of
/// to_string).
inline Polynomial parse_polynomial(const std::string& text) {
    Polynomial out;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    while (pos < text.size()) {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != ' ') ++pos;
        Rational coef = rational_from_string(text.substr(start, pos - start));
        Monomial m;
        while (true) {
            skip_ws();
            if (pos >= text.size() || text[pos] != '*') break;
            ++pos;
            skip_ws();
            if (pos >= text.size() || text[pos] != 'x') throw std::invalid_argument("polynomial parse: expected variable");
            ++pos;
            std::size_t vs = pos;
            while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            int var = std::stoi(text.substr(vs, pos - vs));
            int exp = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::size_t es = pos;
                while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                exp = std::stoi(text.substr(es, pos - es));
            }
            m = m * Monomial::var(var, exp);
        }
        out.add_term(m, coef);
        skip_ws();
        if (pos < text.size()) {
            if (text[pos] != '+') throw std::invalid_argument("polynomial parse: expected '+'");
            ++pos;
        }
    }
    return out;
}

}  // namespace omw
