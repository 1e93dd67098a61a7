#include "qrg/cli.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrg/algebra.hpp"
#include "qrg/charzero.hpp"
#include "qrg/clique_core.hpp"
#include "qrg/construct.hpp"
#include "qrg/oracle.hpp"
#include "qrg/qform.hpp"

namespace qrg {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------- tokens --

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

BigInt parse_integer(const std::string& s) {
    if (s.empty()) throw parse_error("empty number");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw parse_error("malformed integer: " + s);
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw parse_error("malformed integer: " + s);
    return BigInt(s);
}

BigRat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(parse_integer(s));
    BigInt num = parse_integer(s.substr(0, slash));
    BigInt den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator: " + s);
    return BigRat(num) / BigRat(den);
}

std::uint64_t parse_u64(const std::string& s) {
    BigInt v = parse_integer(s);
    if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw parse_error("number out of range: " + s);
    return v.convert_to<std::uint64_t>();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    for (const auto& tok : out)
        if (tok.empty()) throw parse_error("empty entry in list: " + s);
    return out;
}

// [[a,b],[c,d]] -> token grid; whitespace is ignored
std::vector<std::vector<std::string>> parse_matrix(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    std::size_t i = 0;
    auto expect = [&](char c) {
        if (i >= t.size() || t[i] != c)
            throw parse_error("malformed matrix: " + s);
        ++i;
    };
    expect('[');
    std::vector<std::vector<std::string>> rows;
    while (true) {
        expect('[');
        std::vector<std::string> row;
        std::string cur;
        while (i < t.size() && t[i] != ']') {
            if (t[i] == ',') {
                row.push_back(cur);
                cur.clear();
            } else {
                cur += t[i];
            }
            ++i;
        }
        expect(']');
        row.push_back(cur);
        for (const auto& tok : row)
            if (tok.empty()) throw parse_error("malformed matrix: " + s);
        rows.push_back(std::move(row));
        if (i < t.size() && t[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    expect(']');
    if (i != t.size()) throw parse_error("malformed matrix: " + s);
    for (const auto& row : rows)
        if (row.size() != rows.size())
            throw parse_error("matrix form input must be square: " + s);
    return rows;
}

// ------------------------------------------------------------------ ring --

struct ParsedRing {
    enum class Kind { finite, rational, padic, real } kind;
    std::optional<Ring> ring;  // finite only
    BigInt prime = 0;          // padic only
};

ParsedRing parse_ring(const std::string& s) {
    if (s == "q") return {ParsedRing::Kind::rational, std::nullopt, 0};
    if (s == "r") return {ParsedRing::Kind::real, std::nullopt, 0};
    if (starts_with(s, "qp:")) {
        BigInt p = parse_integer(s.substr(3));
        if (p < 2 || prime_factors(p) != std::vector<BigInt>{p})
            throw math_error("p-adic place must be a prime");
        return {ParsedRing::Kind::padic, std::nullopt, std::move(p)};
    }
    if (starts_with(s, "gf:")) {
        std::string body = s.substr(3);
        auto caret = body.find('^');
        std::uint64_t p =
            parse_u64(caret == std::string::npos ? body : body.substr(0, caret));
        unsigned k = caret == std::string::npos
                         ? 1u
                         : static_cast<unsigned>(parse_u64(body.substr(caret + 1)));
        return {ParsedRing::Kind::finite, Ring::finite_field(p, k), 0};
    }
    if (starts_with(s, "zmod:")) {
        std::string body = s.substr(5);
        auto caret = body.find('^');
        if (caret == std::string::npos)
            throw parse_error("zmod spec needs an exponent: zmod:p^k");
        std::uint64_t p = parse_u64(body.substr(0, caret));
        unsigned k = static_cast<unsigned>(parse_u64(body.substr(caret + 1)));
        return {ParsedRing::Kind::finite, Ring::residue_ring(p, k), 0};
    }
    throw parse_error("unknown ring spec: " + s);
}

// ------------------------------------------------------------ form specs --

QForm parse_form_finite(const Ring& R, const std::string& s) {
    auto to_fe = [&](const std::string& tok) {
        return R.from_int(parse_integer(tok));
    };
    if (starts_with(s, "diag:")) {
        std::vector<Fe> diag;
        for (const auto& tok : split_csv(s.substr(5))) diag.push_back(to_fe(tok));
        return make_form_diag(R, diag);
    }
    auto to_rows = [&](const std::string& body) {
        std::vector<std::vector<Fe>> rows;
        for (const auto& row : parse_matrix(body)) {
            rows.emplace_back();
            for (const auto& tok : row) rows.back().push_back(to_fe(tok));
        }
        return rows;
    };
    if (starts_with(s, "upper:")) return make_form_upper(R, to_rows(s.substr(6)));
    if (starts_with(s, "gram:")) return make_form_gram(R, to_rows(s.substr(5)));
    throw parse_error("unknown form spec: " + s);
}

// Congruence diagonalization of a symmetric rational matrix. Throws on
// rank deficiency; the zero-diagonal repair e_i += e_j keeps symmetry.
std::vector<BigRat> diagonalize_sym(std::vector<std::vector<BigRat>> s) {
    const int n = static_cast<int>(s.size());
    std::vector<BigRat> diag;
    for (int i = 0; i < n; ++i) {
        if (s[i][i] == 0) {
            int piv = -1;
            for (int j = i + 1; j < n && piv < 0; ++j)
                if (s[j][j] != 0) piv = j;
            if (piv >= 0) {
                std::swap(s[i], s[piv]);
                for (auto& row : s) std::swap(row[i], row[piv]);
            } else {
                int j = -1;
                for (int jj = i + 1; jj < n && j < 0; ++jj)
                    if (s[i][jj] != 0) j = jj;
                if (j < 0) throw math_error("form is degenerate");
                for (int k = 0; k < n; ++k) s[i][k] += s[j][k];
                for (int k = 0; k < n; ++k) s[k][i] += s[k][j];
            }
        }
        const BigRat p = s[i][i];
        for (int j = i + 1; j < n; ++j)
            for (int k = i + 1; k < n; ++k) s[j][k] -= s[i][j] * s[i][k] / p;
        diag.push_back(p);
    }
    return diag;
}

RationalForm parse_form_rational(const std::string& s) {
    if (starts_with(s, "diag:")) {
        std::vector<BigRat> diag;
        for (const auto& tok : split_csv(s.substr(5)))
            diag.push_back(parse_rational(tok));
        return make_rational_form(diag);
    }
    bool upper = starts_with(s, "upper:");
    bool gram = starts_with(s, "gram:");
    if (!upper && !gram) throw parse_error("unknown form spec: " + s);
    auto grid = parse_matrix(s.substr(upper ? 6 : 5));
    const int n = static_cast<int>(grid.size());
    std::vector<std::vector<BigRat>> m(n);
    for (int i = 0; i < n; ++i)
        for (const auto& tok : grid[i]) m[i].push_back(parse_rational(tok));
    std::vector<std::vector<BigRat>> sym(n, std::vector<BigRat>(n));
    if (upper) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (m[i][j] != 0)
                    throw math_error("upper matrix has entries below the diagonal");
        // q(x) = sum_{i<=j} u_ij x_i x_j has polar/2 matrix u_ii on the
        // diagonal and u_ij/2 off it
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                sym[i][j] = i == j ? m[i][i]
                                   : m[std::min(i, j)][std::max(i, j)] / 2;
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (m[i][j] != m[j][i])
                    throw math_error("gram matrix must be symmetric");
                sym[i][j] = m[i][j] / 2;
            }
    }
    return make_rational_form(diagonalize_sym(std::move(sym)));
}

Fe parse_scalar_finite(const Ring& R, const std::string& s) {
    BigRat v = parse_rational(s);
    Fe num = R.from_int(BigInt(numerator(v)));
    BigInt den(denominator(v));
    Fe a = den == 1 ? num : R.div(num, R.from_int(den));
    if (a != 0 && !R.is_unit(a))
        throw math_error("scalar must be zero or a unit in the ring");
    return a;
}

// ---------------------------------------------------------------- output --

OracleLimits make_limits(const Request& req) {
    OracleLimits lim;
    if (req.cap) lim.node_budget = req.cap;
    lim.workers = req.workers;
    return lim;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void emit_warnings_text(std::ostringstream& buf,
                        const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) buf << "warning: " << w << "\n";
}

ordered_json warnings_json(const std::vector<std::string>& warnings) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : warnings) arr.push_back(w);
    return arr;
}

ordered_json case_json(const CliqueCase& c) {
    ordered_json j;
    j["case"] = case_token(c.label);
    j["k"] = c.k;
    j["extra"] = c.extra_vector;
    return j;
}

void dump_json(std::ostringstream& buf, const ordered_json& j) {
    buf << j.dump(2) << "\n";
}

std::string rational_str(const BigRat& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string diag_str(const RationalForm& f) {
    std::ostringstream os;
    for (std::size_t i = 0; i < f.entries.size(); ++i)
        os << (i ? "," : "") << f.entries[i];
    return os.str();
}

// ------------------------------------------------------- finite commands --

int cmd_omega_finite(const Request& req, const Ring& R, std::ostringstream& buf) {
    QForm q = parse_form_finite(R, req.form);
    Fe a = parse_scalar_finite(R, req.scalar);
    CliqueReport rep = clique_number(q, a, make_limits(req));
    const CliqueCase& c = rep.decision;
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "omega";
        j["ring"] = R.to_string();
        j["n"] = q.n;
        j["scalar"] = a;
        j["omega"] = rep.omega.str();
        j.update(case_json(c));
        j["warnings"] = warnings_json(rep.warnings);
        dump_json(buf, j);
    } else {
        buf << "omega=" << rep.omega << " case=" << case_token(c.label)
            << " k=" << c.k << " extra=" << bool_str(c.extra_vector) << "\n";
        emit_warnings_text(buf, rep.warnings);
    }
    return 0;
}

int cmd_count(const Request& req, const Ring& R, std::ostringstream& buf) {
    QForm q = parse_form_finite(R, req.form);
    Fe a = parse_scalar_finite(R, req.scalar);
    CountReport ct = count_max_cliques(q, a, make_limits(req));
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "count";
        j["ring"] = R.to_string();
        j["n"] = q.n;
        j["scalar"] = a;
        j["omega"] = ct.omega.str();
        j["count"] = ct.omega_max.str();
        j["o_order"] = ct.o_order.str();
        j["iso_order"] = ct.iso_order.str();
        ordered_json terms = ordered_json::array();
        for (const auto& t : ct.orbit_terms) terms.push_back(t.str());
        j["orbit_terms"] = terms;
        j["alpha"] = ct.alpha ? ordered_json(ct.alpha->str()) : ordered_json();
        j.update(case_json(ct.decision));
        j["warnings"] = warnings_json(ct.warnings);
        dump_json(buf, j);
    } else {
        buf << "count=" << ct.omega_max << " |O|=" << ct.o_order
            << " |iso|=" << ct.iso_order << "\n";
        emit_warnings_text(buf, ct.warnings);
    }
    return 0;
}

int cmd_construct(const Request& req, const Ring& R, std::ostringstream& buf) {
    QForm q = parse_form_finite(R, req.form);
    Fe a = parse_scalar_finite(R, req.scalar);
    Clique c = construct_max_clique(q, a);
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "construct";
        j["ring"] = R.to_string();
        j["n"] = q.n;
        j["scalar"] = a;
        j["size"] = c.vertices.size();
        j["k"] = c.k;
        j["extra"] = c.extra_vector;
        j["vertices"] = ordered_json::parse(clique_to_json(c));
        dump_json(buf, j);
    } else {
        buf << "size=" << c.vertices.size() << " k=" << c.k
            << " extra=" << bool_str(c.extra_vector) << "\n"
            << clique_to_csv(c);
    }
    return 0;
}

int cmd_classify_finite(const Request& req, const Ring& R,
                        std::ostringstream& buf) {
    QForm q = parse_form_finite(R, req.form);
    Fe a = parse_scalar_finite(R, req.scalar);
    bool nondeg = is_nondegenerate(q);
    std::optional<FormInvariants> inv;
    std::optional<CliqueCase> c;
    if (nondeg) {
        inv = invariants_ff(R.is_field() ? q : reduce_residue_form(q));
        c = classify_case(q, a);
    }
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "classify";
        j["ring"] = R.to_string();
        j["n"] = q.n;
        j["scalar"] = a;
        j["nondegenerate"] = nondeg;
        if (inv) {
            j["det"] = inv->det_class ? ordered_json(*inv->det_class)
                                      : ordered_json();
            j["arf"] = inv->arf ? ordered_json(*inv->arf) : ordered_json();
            j["witt"] = inv->witt_index;
            j["hyperbolic"] = inv->hyperbolic;
            j.update(case_json(*c));
        }
        dump_json(buf, j);
    } else {
        buf << "ring=" << R.to_string() << " n=" << q.n
            << " nondegenerate=" << bool_str(nondeg);
        if (inv) {
            if (inv->det_class) buf << " det=" << *inv->det_class;
            if (inv->arf) buf << " arf=" << *inv->arf;
            buf << " witt=" << inv->witt_index
                << " hyperbolic=" << bool_str(inv->hyperbolic)
                << " case=" << case_token(c->label) << " k=" << c->k
                << " extra=" << bool_str(c->extra_vector);
        }
        buf << "\n";
    }
    return 0;
}

int cmd_graph(const Request& req, const Ring& R, std::ostringstream& buf) {
    QForm q = parse_form_finite(R, req.form);
    Fe a = parse_scalar_finite(R, req.scalar);
    RepGraph g = build_graph(q, a, GraphMode::full, make_limits(req));
    if (req.format == "dot") {
        export_dot(g, buf);
        return 0;
    }
    if (req.format == "json") {
        std::ostringstream edges;
        export_edge_list(g, edges);
        ordered_json arr = ordered_json::array();
        std::istringstream lines(edges.str());
        std::uint64_t u = 0, v = 0;
        while (lines >> u >> v) arr.push_back(ordered_json::array({u, v}));
        ordered_json j;
        j["command"] = "graph";
        j["ring"] = R.to_string();
        j["n"] = q.n;
        j["scalar"] = a;
        j["vertex_count"] = g.vertex_count();
        j["edges"] = arr;
        dump_json(buf, j);
        return 0;
    }
    export_edge_list(g, buf);
    return 0;
}

// ----------------------------------------------------- rational commands --

struct RationalRequest {
    RationalForm form;
    BigRat scalar;
    ParsedRing::Kind kind;
    BigInt prime;  // padic only
};

RationalOmegaReport rational_report(const RationalRequest& r) {
    switch (r.kind) {
        case ParsedRing::Kind::rational:
            return rational_omega(r.form, r.scalar);
        case ParsedRing::Kind::padic:
            return local_omega(r.form, r.scalar, Place::at(r.prime));
        default:
            return local_omega(r.form, r.scalar, Place::at_infinity());
    }
}

int cmd_omega_rational(const Request& req, const RationalRequest& r,
                       std::ostringstream& buf) {
    RationalOmegaReport rep = rational_report(r);
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "omega";
        j["ring"] = req.ring;
        j["n"] = r.form.n;
        j["scalar"] = rational_str(r.scalar);
        j["omega"] = rep.omega;
        j["d"] = rep.d;
        dump_json(buf, j);
    } else {
        buf << "omega=" << rep.omega << " d=" << rep.d << "\n";
    }
    return 0;
}

int cmd_local_global(const Request& req, const RationalRequest& r,
                     std::ostringstream& buf) {
    RationalOmegaReport rep = rational_report(r);
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "local-global";
        j["ring"] = req.ring;
        j["n"] = r.form.n;
        j["scalar"] = rational_str(r.scalar);
        j["omega"] = rep.omega;
        j["d"] = rep.d;
        j["blocked_at"] = rep.blocked_dim;
        j["place"] = rep.blocked_place.to_string();
        ordered_json cert = ordered_json::array();
        for (const auto& pw : rep.certificate) {
            ordered_json e;
            e["place"] = pw.place.to_string();
            e["witt"] = pw.witt;
            cert.push_back(e);
        }
        j["certificate"] = cert;
        dump_json(buf, j);
    } else {
        buf << "omega=" << rep.omega << " d=" << rep.d
            << " blocked_at=" << rep.blocked_dim
            << " place=" << rep.blocked_place.to_string() << "\n";
        buf << "certificate:";
        for (const auto& pw : rep.certificate)
            buf << " " << pw.place.to_string() << "=" << pw.witt;
        buf << "\n";
    }
    return 0;
}

int cmd_classify_rational(const Request& req, const RationalRequest& r,
                          std::ostringstream& buf) {
    const RationalForm& f = r.form;
    BigInt disc = form_discriminant(f);
    std::optional<int> witt;
    if (r.kind == ParsedRing::Kind::padic)
        witt = local_witt_index(f, Place::at(r.prime));
    else if (r.kind == ParsedRing::Kind::real)
        witt = local_witt_index(f, Place::at_infinity());
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "classify";
        j["ring"] = req.ring;
        j["n"] = f.n;
        j["diag"] = diag_str(f);
        j["r_plus"] = f.r_plus;
        j["r_minus"] = f.r_minus;
        j["disc"] = disc.str();
        j["witt"] = witt ? ordered_json(*witt) : ordered_json();
        dump_json(buf, j);
    } else {
        buf << "ring=" << req.ring << " n=" << f.n << " r+=" << f.r_plus
            << " r-=" << f.r_minus << " disc=" << disc;
        if (witt) buf << " witt=" << *witt;
        buf << "\n";
    }
    return 0;
}

// --------------------------------------------------------------- verify --

int cmd_verify_instance(const Request& req, const Ring& R,
                        std::ostringstream& buf) {
    QForm q = parse_form_finite(R, req.form);
    Fe a = parse_scalar_finite(R, req.scalar);
    OracleLimits lim = make_limits(req);
    CliqueReport cr = clique_number(q, a, lim);
    bool want_count = R.is_field() && R.is_unit(a);
    RepGraph g = build_graph(q, a, GraphMode::full, lim);
    CliqueStats st = brute_clique_stats(g, lim, want_count);
    std::vector<std::string> warnings = cr.warnings;
    bool omega_ok = cr.omega == BigInt(st.omega);
    bool count_ok = true;
    std::optional<CountReport> ct;
    if (want_count) {
        ct = count_max_cliques(q, a, lim);
        for (const auto& w : ct->warnings)
            if (std::find(warnings.begin(), warnings.end(), w) == warnings.end())
                warnings.push_back(w);
        count_ok = ct->omega_max == st.count;
    }
    bool ok = omega_ok && count_ok;
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "verify";
        j["mode"] = "instance";
        j["ring"] = R.to_string();
        j["n"] = q.n;
        j["scalar"] = a;
        j["omega_formula"] = cr.omega.str();
        j["omega_oracle"] = st.omega;
        if (ct) {
            j["count_formula"] = ct->omega_max.str();
            j["count_oracle"] = st.count.str();
        }
        j["warnings"] = warnings_json(warnings);
        j["verdict"] = ok ? "ok" : "mismatch";
        dump_json(buf, j);
    } else {
        buf << "omega formula=" << cr.omega << " oracle=" << st.omega << "\n";
        if (ct)
            buf << "count formula=" << ct->omega_max << " oracle=" << st.count
                << "\n";
        emit_warnings_text(buf, warnings);
        buf << "verdict=" << (ok ? "ok" : "mismatch") << "\n";
    }
    return ok ? 0 : 1;
}

struct SweepOutcome {
    std::string name;
    long instances = 0;
    long mismatches = 0;
    long warnings = 0;
    std::vector<std::string> details;  // first few mismatch descriptions
};

std::string describe_instance(const QForm& q, Fe a) {
    std::ostringstream os;
    os << q.ring.to_string() << " upper=";
    for (int i = 0; i < q.n; ++i)
        for (int j = i; j < q.n; ++j) os << q.at(i, j) << ",";
    os << " a=" << a;
    return os.str();
}

void check_instance(const QForm& q, Fe a, const OracleLimits& lim,
                    bool with_count, SweepOutcome& out) {
    ++out.instances;
    CliqueReport cr = clique_number(q, a, lim);
    out.warnings += static_cast<long>(cr.warnings.size());
    bool want_count = with_count && q.ring.is_field() && q.ring.is_unit(a);
    RepGraph g = build_graph(q, a, GraphMode::full, lim);
    CliqueStats st = brute_clique_stats(g, lim, want_count);
    auto note = [&](const std::string& what, const std::string& formula,
                    const std::string& oracle) {
        ++out.mismatches;
        if (out.details.size() < 8)
            out.details.push_back(describe_instance(q, a) + " " + what +
                                  " formula=" + formula + " oracle=" + oracle);
    };
    if (cr.omega != BigInt(st.omega))
        note("omega", cr.omega.str(), std::to_string(st.omega));
    if (want_count) {
        CountReport ct = count_max_cliques(q, a, lim);
        if (ct.omega_max != st.count)
            note("count", ct.omega_max.str(), st.count.str());
    }
}

// every diagonal form with unit entries, dimension 1..max_n
template <typename F>
void for_each_unit_diag(const Ring& R, int max_n, F&& visit) {
    std::vector<Fe> units;
    for (Fe v = 1; v < R.size(); ++v)
        if (R.is_unit(v)) units.push_back(v);
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<Fe> diag;
            for (std::size_t i : idx) diag.push_back(units[i]);
            visit(make_form_diag(R, diag));
            int pos = n - 1;
            while (pos >= 0 && ++idx[pos] == units.size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
}

template <typename F>
void for_each_char2_form(const Ring& R, F&& visit) {
    std::vector<QForm> blocks;
    for (Fe a = 0; a < R.size(); ++a)
        for (Fe b = 0; b < R.size(); ++b) blocks.push_back(binary_block(R, a, b));
    for (const auto& blk : blocks) visit(blk);
    for (const auto& b1 : blocks)
        for (const auto& b2 : blocks) visit(direct_sum(b1, b2));
}

template <typename F>
void for_each_unit(const Ring& R, F&& visit) {
    for (Fe a = 1; a < R.size(); ++a)
        if (R.is_unit(a)) visit(a);
}

SweepOutcome sweep_odd_fields(const OracleLimits& lim) {
    SweepOutcome out;
    out.name = "odd-fields";
    for (std::uint64_t p : {3, 5, 7}) {
        Ring R = Ring::finite_field(p);
        for_each_unit_diag(R, 3, [&](const QForm& q) {
            for_each_unit(R, [&](Fe a) { check_instance(q, a, lim, true, out); });
        });
    }
    return out;
}

SweepOutcome sweep_char2(const OracleLimits& lim) {
    SweepOutcome out;
    out.name = "char2";
    for (unsigned k : {1u, 2u}) {
        Ring R = Ring::finite_field(2, k);
        for_each_char2_form(R, [&](const QForm& q) {
            for_each_unit(R, [&](Fe a) { check_instance(q, a, lim, true, out); });
        });
    }
    return out;
}

SweepOutcome sweep_isotropic(const OracleLimits& lim) {
    SweepOutcome out;
    out.name = "isotropic";
    for (std::uint64_t p : {3, 5, 7}) {
        Ring R = Ring::finite_field(p);
        for_each_unit_diag(
            R, 3, [&](const QForm& q) { check_instance(q, 0, lim, false, out); });
    }
    for (unsigned k : {1u, 2u}) {
        Ring R = Ring::finite_field(2, k);
        for_each_char2_form(
            R, [&](const QForm& q) { check_instance(q, 0, lim, false, out); });
    }
    return out;
}

SweepOutcome sweep_residue(const OracleLimits& lim) {
    SweepOutcome out;
    out.name = "residue";
    for (auto [p, k] : {std::pair{3u, 2u}, std::pair{5u, 2u}}) {
        Ring R = Ring::residue_ring(p, k);
        for_each_unit_diag(R, 2, [&](const QForm& q) {
            for_each_unit(R, [&](Fe a) { check_instance(q, a, lim, false, out); });
        });
    }
    return out;
}

int cmd_verify_suites(const Request& req, std::ostringstream& buf) {
    OracleLimits lim = make_limits(req);
    std::vector<SweepOutcome> outs;
    auto want = [&](const char* name) {
        return req.suite == name || req.suite == "all";
    };
    if (want("odd-fields")) outs.push_back(sweep_odd_fields(lim));
    if (want("char2")) outs.push_back(sweep_char2(lim));
    if (want("isotropic")) outs.push_back(sweep_isotropic(lim));
    if (want("residue")) outs.push_back(sweep_residue(lim));
    if (outs.empty()) throw parse_error("unknown suite: " + req.suite);
    long mismatches = 0;
    for (const auto& o : outs) mismatches += o.mismatches;
    if (req.format == "json") {
        ordered_json j;
        j["command"] = "verify";
        j["mode"] = "suite";
        ordered_json suites = ordered_json::array();
        for (const auto& o : outs) {
            ordered_json e;
            e["suite"] = o.name;
            e["instances"] = o.instances;
            e["mismatches"] = o.mismatches;
            e["warnings"] = o.warnings;
            e["details"] = warnings_json(o.details);
            suites.push_back(e);
        }
        j["suites"] = suites;
        j["verdict"] = mismatches == 0 ? "ok" : "mismatch";
        dump_json(buf, j);
    } else {
        for (const auto& o : outs) {
            buf << "suite=" << o.name << " instances=" << o.instances
                << " mismatches=" << o.mismatches << " warnings=" << o.warnings
                << "\n";
            for (const auto& d : o.details) buf << "mismatch: " << d << "\n";
        }
        buf << "verdict=" << (mismatches == 0 ? "ok" : "mismatch") << "\n";
    }
    return mismatches == 0 ? 0 : 1;
}

// -------------------------------------------------------------- dispatch --

int dispatch(const Request& req, std::ostringstream& buf) {
    if (req.command == "verify" && !req.suite.empty())
        return cmd_verify_suites(req, buf);
    if (req.ring.empty()) throw parse_error("missing ring spec");
    if (req.form.empty()) throw parse_error("missing form spec");
    ParsedRing pr = parse_ring(req.ring);
    if (pr.kind == ParsedRing::Kind::finite) {
        const Ring& R = *pr.ring;
        if (req.command == "omega") return cmd_omega_finite(req, R, buf);
        if (req.command == "count") return cmd_count(req, R, buf);
        if (req.command == "construct") return cmd_construct(req, R, buf);
        if (req.command == "classify") return cmd_classify_finite(req, R, buf);
        if (req.command == "graph") return cmd_graph(req, R, buf);
        if (req.command == "verify") return cmd_verify_instance(req, R, buf);
        throw math_error("local-global analysis needs the ring q, qp:p, or r");
    }
    RationalRequest r{parse_form_rational(req.form),
                      parse_rational(req.scalar), pr.kind, pr.prime};
    if (req.command == "omega") return cmd_omega_rational(req, r, buf);
    if (req.command == "local-global") return cmd_local_global(req, r, buf);
    if (req.command == "classify") return cmd_classify_rational(req, r, buf);
    throw math_error("the " + req.command +
                     " command needs a finite ring (gf:p^k or zmod:p^k)");
}

}  // namespace

int run(const Request& req, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> commands = {
        "omega", "count",    "construct",   "verify",
        "graph", "classify", "local-global"};
    std::ostringstream buf;
    int code = 0;
    try {
        if (std::find(commands.begin(), commands.end(), req.command) ==
            commands.end())
            throw parse_error("unknown command: " + req.command);
        bool dot_ok = req.command == "graph" && req.format == "dot";
        if (req.format != "text" && req.format != "json" && !dot_ok)
            throw parse_error("unknown format: " + req.format);
        if (req.workers < 1) throw parse_error("workers must be at least 1");
        code = dispatch(req, buf);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const limit_error& e) {
        err << "limit exceeded: " << e.what() << "\n";
        return 4;
    } catch (const math_error& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 3;
    }
    out << buf.str();
    return code;
}

int run_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"clique numbers of representation graphs of quadratic forms"};
    app.require_subcommand(1);
    Request req;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"omega", "clique number of the representation graph"},
        {"count", "number of maximum cliques, with group orders"},
        {"construct", "explicit maximum clique"},
        {"verify", "formula-versus-oracle check, one instance or a suite"},
        {"graph", "export the representation graph"},
        {"classify", "form invariants and the clique case"},
        {"local-global", "rational clique number with its local certificate"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--ring", req.ring,
                        "ring spec: gf:p[^k], zmod:p^k, q, qp:p, r");
        sub->add_option("--form", req.form,
                        "form spec: diag:..., upper:[[...]], gram:[[...]]");
        sub->add_option("--scalar", req.scalar,
                        "target value, integer or rational (default 1)");
        sub->add_option("--format", req.format,
                        name == "graph" ? "output: text, json, dot"
                                        : "output: text, json");
        sub->add_option("--cap", req.cap, "oracle node budget (0 = default)");
        sub->add_option("--workers", req.workers, "oracle worker count");
        if (name == "verify")
            sub->add_option(
                "--suite", req.suite,
                "named sweep: odd-fields, char2, isotropic, residue, all");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }
    req.command = app.get_subcommands().front()->get_name();
    return run(req, out, err);
}

}  // namespace qrg
