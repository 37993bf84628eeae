#include "ekgw/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <functional>
#include <set>

#include "ekgw/kronecker.hpp"

namespace ekgw {

namespace {

bool cplx_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

void add_coeff(std::map<int, int>& m, int k, int c) {
    if (c == 0) return;
    int v = (m[k] += c);
    if (v == 0) m.erase(k);
}

std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string fmt_coeff(cplx c) {
    if (c.imag() == 0.0) return fmt_double(c.real());
    std::string im = fmt_double(std::abs(c.imag()));
    return "(" + fmt_double(c.real()) + (c.imag() < 0 ? "-" : "+") + im + "i)";
}

int sign_pow(int m) { return (m % 2 == 0) ? 1 : -1; }

}  // namespace

LinearForm LinearForm::zvar(int i, int c) {
    LinearForm f;
    add_coeff(f.z, i, c);
    return f;
}

LinearForm LinearForm::wvar(int j, int c) {
    LinearForm f;
    add_coeff(f.w, j, c);
    return f;
}

LinearForm LinearForm::s(int i, int j) { return wvar(i) + zvar(i) - zvar(j); }

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    for (auto [k, c] : o.z) add_coeff(z, k, c);
    for (auto [k, c] : o.w) add_coeff(w, k, c);
    constant += o.constant;
    return *this;
}

LinearForm LinearForm::operator-() const {
    LinearForm f;
    for (auto [k, c] : z) f.z[k] = -c;
    for (auto [k, c] : w) f.w[k] = -c;
    f.constant = -constant;
    return f;
}

LinearForm operator*(int k, const LinearForm& a) {
    LinearForm f;
    if (k == 0) return f;
    for (auto [i, c] : a.z) f.z[i] = k * c;
    for (auto [i, c] : a.w) f.w[i] = k * c;
    f.constant = double(k) * a.constant;
    return f;
}

int LinearForm::zcoeff(int i) const {
    auto it = z.find(i);
    return it == z.end() ? 0 : it->second;
}

bool LinearForm::negative_leading() const {
    if (!z.empty()) return z.begin()->second < 0;
    if (!w.empty()) return w.begin()->second < 0;
    if (constant.real() != 0.0) return constant.real() < 0;
    return constant.imag() < 0;
}

cplx LinearForm::evaluate(const std::vector<cplx>& zv, const std::vector<cplx>& wv) const {
    cplx v = constant;
    for (auto [k, c] : z) {
        if (k < 0 || std::size_t(k) >= zv.size())
            throw DomainError("no value for z" + std::to_string(k));
        v += double(c) * zv[k];
    }
    for (auto [k, c] : w) {
        if (k < 0 || std::size_t(k) >= wv.size())
            throw DomainError("no value for w" + std::to_string(k));
        v += double(c) * wv[k];
    }
    return v;
}

std::string LinearForm::to_string() const {
    std::string out;
    auto put = [&](int c, const std::string& name) {
        if (out.empty())
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        if (std::abs(c) != 1) out += std::to_string(std::abs(c)) + "*";
        out += name;
    };
    for (auto [k, c] : z) put(c, "z" + std::to_string(k));
    for (auto [k, c] : w) put(c, "w" + std::to_string(k));
    if (constant != 0.0) {
        std::string cs = "c(" + fmt_double(constant.real()) + "," + fmt_double(constant.imag()) + ")";
        out += out.empty() ? cs : " + " + cs;
    }
    return out.empty() ? "0" : out;
}

bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.z == b.z && a.w == b.w && a.constant == b.constant;
}

bool operator<(const LinearForm& a, const LinearForm& b) {
    if (a.z != b.z) return a.z < b.z;
    if (a.w != b.w) return a.w < b.w;
    return cplx_less(a.constant, b.constant);
}

bool operator<(const EKFactor& a, const EKFactor& b) {
    if (!(a.s == b.s)) return a.s < b.s;
    if (a.m != b.m) return a.m < b.m;
    return a.hat < b.hat;
}

EKMonomial EKMonomial::canonical() const {
    EKMonomial r;
    r.coefficient = coefficient;
    for (const auto& f : factors) {
        if (f.m < 0) throw DomainError("negative EK index");
        if (f.m > 0) r.factors.push_back(f);
    }
    std::sort(r.factors.begin(), r.factors.end());
    return r;
}

EKExpr EKExpr::constant(cplx c) {
    EKExpr e;
    e.add({c, {}});
    return e;
}

EKExpr EKExpr::factor(int m, const LinearForm& s, bool hat, cplx c) {
    EKExpr e;
    e.add({c, {EKFactor{m, s, hat}}});
    return e;
}

void EKExpr::add(const EKMonomial& mono) {
    if (mono.coefficient == 0.0) return;
    EKMonomial c = mono.canonical();
    auto it = terms_.find(c.factors);
    if (it == terms_.end()) {
        terms_.emplace(std::move(c.factors), c.coefficient);
        return;
    }
    it->second += c.coefficient;
    if (it->second == 0.0) terms_.erase(it);
}

std::vector<EKMonomial> EKExpr::monomials() const {
    std::vector<EKMonomial> out;
    out.reserve(terms_.size());
    for (const auto& [fs, c] : terms_) out.push_back({c, fs});
    return out;
}

EKExpr& EKExpr::operator+=(const EKExpr& o) {
    for (const auto& [fs, c] : o.terms_) add({c, fs});
    return *this;
}

EKExpr operator-(EKExpr a, const EKExpr& b) {
    for (const auto& [fs, c] : b.terms_) a.add({-c, fs});
    return a;
}

EKExpr operator*(const EKExpr& a, const EKExpr& b) {
    EKExpr r;
    for (const auto& [fa, ca] : a.terms_)
        for (const auto& [fb, cb] : b.terms_) {
            EKMonomial m{ca * cb, fa};
            m.factors.insert(m.factors.end(), fb.begin(), fb.end());
            r.add(m);
        }
    return r;
}

EKExpr operator*(cplx s, const EKExpr& a) {
    EKExpr r;
    for (const auto& [fs, c] : a.terms_) r.add({s * c, fs});
    return r;
}

EKExpr EKExpr::normalized() const {
    EKExpr r;
    for (const auto& [fs, c] : terms_) {
        EKMonomial m{c, fs};
        for (auto& f : m.factors)
            if (f.s.negative_leading()) {
                f.s = -f.s;
                m.coefficient *= double(sign_pow(f.m));
            }
        r.add(m);
    }
    return r;
}

bool operator==(const EKExpr& a, const EKExpr& b) {
    return a.normalized().terms_ == b.normalized().terms_;
}

std::string EKExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [fs, c] : terms_) {
        cplx coeff = c;
        if (!out.empty()) {
            if (coeff.imag() == 0.0 && coeff.real() < 0) {
                out += " - ";
                coeff = -coeff;
            } else {
                out += " + ";
            }
        }
        out += fmt_coeff(coeff);
        for (const auto& f : fs)
            out += " * " + std::string(f.hat ? "eh[" : "e[") + std::to_string(f.m) + "](" + f.s.to_string() + ")";
    }
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    EKExpr expr() {
        EKExpr e;
        skip();
        if (peek_word("0") && rest_is_end(1)) return e;
        int sign = 1;
        while (true) {
            EKMonomial m = term();
            m.coefficient *= double(sign);
            e.add(m);
            skip();
            if (at_end()) break;
            if (consume('+'))
                sign = 1;
            else if (consume('-'))
                sign = -1;
            else
                fail("expected + or -");
        }
        return e;
    }

private:
    const std::string& s_;
    std::size_t p_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw DomainError("parse error at offset " + std::to_string(p_) + ": " + what);
    }
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool at_end() {
        skip();
        return p_ >= s_.size();
    }
    bool rest_is_end(std::size_t k) {
        std::size_t q = p_ + k;
        while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
        return q >= s_.size();
    }
    bool peek_word(const char* w) { return s_.compare(p_, std::strlen(w), w) == 0; }
    bool consume(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }
    double number() {
        skip();
        double v = 0;
        auto r = std::from_chars(s_.data() + p_, s_.data() + s_.size(), v);
        if (r.ec != std::errc()) fail("expected number");
        p_ = std::size_t(r.ptr - s_.data());
        return v;
    }
    int integer() {
        skip();
        int v = 0;
        auto r = std::from_chars(s_.data() + p_, s_.data() + s_.size(), v);
        if (r.ec != std::errc()) fail("expected integer");
        p_ = std::size_t(r.ptr - s_.data());
        return v;
    }

    cplx coefficient() {
        skip();
        if (consume('(')) {
            double re = number();
            skip();
            int sg = 1;
            if (consume('+'))
                sg = 1;
            else if (consume('-'))
                sg = -1;
            else
                fail("expected sign in complex coefficient");
            double im = number();
            expect('i');
            expect(')');
            return {re, sg * im};
        }
        return number();
    }

    EKMonomial term() {
        EKMonomial m;
        m.coefficient = coefficient();
        while (true) {
            skip();
            if (!consume('*')) break;
            skip();
            EKFactor f;
            if (peek_word("eh[")) {
                p_ += 3;
                f.hat = true;
            } else if (peek_word("e[")) {
                p_ += 2;
                f.hat = false;
            } else {
                fail("expected eh[ or e[");
            }
            f.m = integer();
            expect(']');
            expect('(');
            f.s = form();
            expect(')');
            m.factors.push_back(f);
        }
        return m;
    }

    LinearForm form() {
        LinearForm f;
        skip();
        if (peek_word("0")) {
            std::size_t save = p_;
            ++p_;
            skip();
            if (p_ < s_.size() && s_[p_] == ')') return f;
            p_ = save;
        }
        int sign = 1;
        if (consume('-')) sign = -1;
        while (true) {
            skip();
            int c = 1;
            if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
                c = integer();
                expect('*');
                skip();
            }
            if (p_ >= s_.size()) fail("unexpected end of form");
            char k = s_[p_];
            if (k == 'z' || k == 'w') {
                ++p_;
                int idx = integer();
                f += (k == 'z' ? LinearForm::zvar(idx, sign * c) : LinearForm::wvar(idx, sign * c));
            } else if (k == 'c') {
                ++p_;
                expect('(');
                double re = number();
                expect(',');
                double im = number();
                expect(')');
                f.constant += double(sign * c) * cplx(re, im);
            } else {
                fail("expected z, w or c");
            }
            skip();
            if (consume('+'))
                sign = 1;
            else if (consume('-'))
                sign = -1;
            else
                break;
        }
        return f;
    }
};

}  // namespace

EKExpr EKExpr::parse(const std::string& text) { return Parser(text).expr(); }

// ---------------------------------------------------------------------------
// Indicating graph

std::vector<int> IndicatingGraph::valency(bool outer) const {
    std::vector<int> v(vertex_count + 1, 0);
    for (const auto& e : edges) {
        int k = outer ? e.from : e.to;
        if (k > 0) ++v[k];
    }
    return v;
}

std::vector<int> IndicatingGraph::total_valency() const {
    std::vector<int> v(vertex_count + 1, 0);
    for (const auto& e : edges) {
        if (e.from > 0) ++v[e.from];
        if (e.to > 0) ++v[e.to];
    }
    return v;
}

bool IndicatingGraph::in_VD() const {
    auto out = valency(true);
    return std::all_of(out.begin(), out.end(), [](int x) { return x <= 1; });
}

IndicatingGraph build_graph(const EKMonomial& f, int n) {
    IndicatingGraph g;
    g.vertex_count = n;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        const auto& fac = f.factors[i];
        if (fac.m == 0) continue;
        std::vector<std::pair<int, int>> vars;
        for (auto [k, c] : fac.s.z)
            if (k >= 1 && k <= n) vars.push_back({k, c});
        if (vars.size() >= 3) throw DomainError("not an arrangement form: " + fac.s.to_string());
        for (auto [k, c] : vars)
            if (std::abs(c) != 1) throw DomainError("not an arrangement form: " + fac.s.to_string());
        if (vars.empty()) {
            g.constant_factors.push_back(int(i));
        } else if (vars.size() == 1) {
            auto [k, c] = vars[0];
            g.edges.push_back(c > 0 ? GraphEdge{k, 0, int(i)} : GraphEdge{0, k, int(i)});
        } else {
            if (vars[0].second == vars[1].second)
                throw DomainError("not an arrangement form: " + fac.s.to_string());
            int from = vars[0].second > 0 ? vars[0].first : vars[1].first;
            int to = vars[0].second > 0 ? vars[1].first : vars[0].first;
            g.edges.push_back({from, to, int(i)});
        }
    }

    // connected components over vertices 1..n (the anchor 0 is not a vertex)
    std::vector<int> parent(n + 1);
    for (int v = 0; v <= n; ++v) parent[v] = v;
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& e : g.edges)
        if (e.from > 0 && e.to > 0) parent[find(e.from)] = find(e.to);
    std::map<int, IndicatingGraph::Component> comps;
    for (int v = 1; v <= n; ++v) comps[find(v)].vertices.push_back(v);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        int v = e.from > 0 ? e.from : e.to;
        comps[find(v)].edges.push_back(int(i));
    }
    auto tv = g.total_valency();
    for (auto& [root, c] : comps) {
        (void)root;
        int anchors = 0;
        for (int ei : c.edges)
            if (g.edges[ei].from == 0 || g.edges[ei].to == 0) ++anchors;
        bool all_le2 = true, all_eq2 = true;
        for (int v : c.vertices) {
            all_le2 = all_le2 && tv[v] <= 2;
            all_eq2 = all_eq2 && tv[v] == 2;
        }
        std::size_t ne = c.edges.size(), nv = c.vertices.size();
        if (ne == 0)
            c.kind = IndicatingGraph::Kind::trivial;
        else if (anchors == 0 && all_eq2 && ne == nv)
            c.kind = IndicatingGraph::Kind::loop;
        else if (all_le2 && anchors <= 2 && ne == nv - 1 + anchors)
            c.kind = IndicatingGraph::Kind::chain;
        else if (ne == nv - 1 + anchors)
            c.kind = IndicatingGraph::Kind::tree;
        else
            c.kind = IndicatingGraph::Kind::other;
        g.components.push_back(std::move(c));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Residues and regularized integrals

namespace {

// Substitute z_var := value (a form free of z_var) into s.
LinearForm substitute(const LinearForm& s, int var, const LinearForm& value) {
    int c = s.zcoeff(var);
    if (c == 0) return s;
    LinearForm r = s;
    r.z.erase(var);
    return r + c * value;
}

bool same_locus(const LinearForm& a, const LinearForm& b) { return a == b || a == -b; }

std::vector<int> factors_with(const EKMonomial& mono, int var) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < mono.factors.size(); ++i)
        if (mono.factors[i].s.zcoeff(var) != 0) idx.push_back(int(i));
    return idx;
}

void require_unit(const EKFactor& f, int var) {
    int c = f.s.zcoeff(var);
    if (std::abs(c) != 1)
        throw UnsupportedError("coefficient of z" + std::to_string(var) + " is not +-1 in " + f.s.to_string());
}

}  // namespace

EKExpr symbolic_residue(const EKExpr& f, int var, const std::optional<LinearForm>& at) {
    EKExpr out;
    for (const auto& mono : f.monomials()) {
        auto idx = factors_with(mono, var);
        for (std::size_t a = 0; a < idx.size(); ++a) {
            require_unit(mono.factors[idx[a]], var);
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (same_locus(mono.factors[idx[a]].s, mono.factors[idx[b]].s))
                    throw UnsupportedError("non-simple pole along " + mono.factors[idx[a]].s.to_string());
        }
        for (int i : idx) {
            const EKFactor& pole = mono.factors[i];
            if (at && !same_locus(*at, pole.s)) continue;
            if (pole.m != 1) continue;
            int sigma = pole.s.zcoeff(var);
            LinearForm rest = pole.s;
            rest.z.erase(var);
            LinearForm value = (-sigma) * rest;  // solves pole.s = 0 for z_var
            EKMonomial r{mono.coefficient * double(sigma), {}};
            for (std::size_t j = 0; j < mono.factors.size(); ++j) {
                if (int(j) == i) continue;
                EKFactor g = mono.factors[j];
                g.s = substitute(g.s, var, value);
                if (g.s.is_zero()) throw UnsupportedError("factor collides with the pole: " + mono.factors[j].s.to_string());
                r.factors.push_back(g);
            }
            out.add(r);
        }
    }
    return out;
}

EKExpr symbolic_reg_integrate_one(const EKExpr& f, int var) {
    EKExpr out;
    for (const auto& mono : f.monomials()) {
        auto idx = factors_with(mono, var);
        if (idx.empty()) {
            out.add(mono);
            continue;
        }
        for (int i : idx) {
            require_unit(mono.factors[i], var);
            if (!mono.factors[i].hat)
                throw UnsupportedError("regularized integral of a holomorphic-limit factor");
        }
        if (idx.size() == 1) continue;  // integral of e_m with m >= 1 vanishes
        if (idx.size() > 2) throw UnsupportedError("unsupported shape: z" + std::to_string(var) + " in more than two factors");
        EKMonomial r{mono.coefficient, {}};
        EKFactor a = mono.factors[idx[0]], b = mono.factors[idx[1]];
        if (a.s.zcoeff(var) < 0) std::swap(a, b);
        if (b.s.zcoeff(var) > 0) {
            b.s = -b.s;
            r.coefficient *= double(sign_pow(b.m));
        }
        LinearForm sum = a.s + b.s;
        if (sum.is_zero()) throw UnsupportedError("degenerate pair: forms cancel");
        r.coefficient *= -1.0;
        r.factors.push_back({a.m + b.m, sum, true});
        for (std::size_t j = 0; j < mono.factors.size(); ++j)
            if (int(j) != idx[0] && int(j) != idx[1]) r.factors.push_back(mono.factors[j]);
        out.add(r);
    }
    return out;
}

namespace {

// Orient the edges of a loop component head to tail; returns the summed form, total
// weight and the sign picked up from reversing factors.
EKMonomial loop_closed_form(const EKMonomial& mono, const IndicatingGraph& g, const IndicatingGraph::Component& c) {
    std::vector<int> edges = c.edges;
    std::vector<bool> used(edges.size(), false);
    int start = c.vertices.front();
    int cur = start;
    cplx sign = 1.0;
    LinearForm total;
    int weight = 0;
    for (std::size_t step = 0; step < edges.size(); ++step) {
        bool found = false;
        for (std::size_t k = 0; k < edges.size() && !found; ++k) {
            if (used[k]) continue;
            const auto& e = g.edges[edges[k]];
            const EKFactor& fac = mono.factors[e.factor];
            if (!fac.hat) throw UnsupportedError("regularized integral of a holomorphic-limit factor");
            if (e.from == cur) {
                total += fac.s;
                cur = e.to;
            } else if (e.to == cur) {
                total += -fac.s;
                sign *= double(sign_pow(fac.m));
                cur = e.from;
            } else {
                continue;
            }
            weight += fac.m;
            used[k] = true;
            found = true;
        }
        if (!found) throw ConsistencyError("loop walk failed");
    }
    if (cur != start || !total.z.empty()) throw ConsistencyError("loop does not close");
    if (total.is_zero()) throw UnsupportedError("degenerate loop: forms cancel");
    // prod delta_{m,0} - prod (delta_{m,0} - 1) with every m >= 1
    double L = double(edges.size());
    sign *= -std::pow(-1.0, L);
    return {sign, {EKFactor{weight, total, true}}};
}

EKExpr integrate_monomial_all(const EKMonomial& mono, int n) {
    IndicatingGraph g = build_graph(mono, n);
    auto tv = g.total_valency();
    for (int v = 1; v <= n; ++v)
        if (tv[v] == 1) return {};
    EKExpr result = EKExpr::constant(mono.coefficient);
    EKMonomial constants{1.0, {}};
    for (int i : g.constant_factors) constants.factors.push_back(mono.factors[i]);
    result = result * EKExpr(constants);
    for (const auto& c : g.components) {
        switch (c.kind) {
            case IndicatingGraph::Kind::trivial:
                break;
            case IndicatingGraph::Kind::loop:
                result = result * EKExpr(loop_closed_form(mono, g, c));
                break;
            default: {
                // no leaf: reduce one vertex at a time (covers chains with both ends anchored)
                EKMonomial part{1.0, {}};
                for (int ei : c.edges) part.factors.push_back(mono.factors[g.edges[ei].factor]);
                EKExpr e(part);
                for (int v : c.vertices) e = symbolic_reg_integrate_one(e, v);
                result = result * e;
            }
        }
        if (result.is_zero()) return result;
    }
    return result;
}

}  // namespace

EKExpr symbolic_reg_integrate_all(const EKExpr& f, int n) {
    EKExpr out;
    for (const auto& mono : f.monomials()) out += integrate_monomial_all(mono, n);
    return out.normalized();
}

EKExpr holomorphic_limit(const EKExpr& f) {
    EKExpr out;
    for (auto mono : f.monomials()) {
        for (auto& fac : mono.factors) fac.hat = false;
        out.add(mono);
    }
    return out;
}

EKExpr elliptic_completion(const EKExpr& f) {
    EKExpr out;
    for (auto mono : f.monomials()) {
        for (auto& fac : mono.factors) fac.hat = true;
        out.add(mono);
    }
    return out;
}

cplx numeric_eval(const EKExpr& f, const std::vector<cplx>& zv, const std::vector<cplx>& wv, const ModularPoint& m) {
    int max_m = 0;
    for (const auto& [fs, c] : f.terms())
        for (const auto& fac : fs) max_m = std::max(max_m, fac.m);
    std::map<std::pair<std::tuple<double, double>, bool>, std::vector<cplx>> cache;
    cplx total = 0.0;
    for (const auto& [fs, c] : f.terms()) {
        cplx term = c;
        for (const auto& fac : fs) {
            cplx x = fac.s.evaluate(zv, wv);
            auto key = std::make_pair(std::make_tuple(x.real(), x.imag()), fac.hat);
            auto it = cache.find(key);
            if (it == cache.end()) {
                if (m.lattice_distance(x) < singular_threshold)
                    throw SingularityError("form " + fac.s.to_string() + " lands on the lattice");
                it = cache.emplace(key, ek_coeffs(x, m, fac.hat, max_m)).first;
            }
            term *= it->second[fac.m];
        }
        total += term;
    }
    return total;
}

}  // namespace ekgw
