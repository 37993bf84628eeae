#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekgw/modular.hpp"

namespace ekgw {

// Integer combination of configuration variables z_i and parameters w_j plus a constant.
// z_0 (and any index outside 1..n when a graph is built) acts as a fixed anchor.
struct LinearForm {
    std::map<int, int> z;
    std::map<int, int> w;
    cplx constant = 0.0;

    static LinearForm zvar(int i, int c = 1);
    static LinearForm wvar(int j, int c = 1);
    // w_i + z_i - z_j
    static LinearForm s(int i, int j);

    LinearForm& operator+=(const LinearForm& o);
    LinearForm operator-() const;
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a += -b; }
    friend LinearForm operator*(int k, const LinearForm& a);

    int zcoeff(int i) const;
    bool is_zero() const { return z.empty() && w.empty() && constant == 0.0; }
    bool z_free() const { return z.empty(); }
    // true when the leading coefficient is negative (z first, then w, then the constant)
    bool negative_leading() const;

    cplx evaluate(const std::vector<cplx>& zv, const std::vector<cplx>& wv) const;
    std::string to_string() const;

    friend bool operator==(const LinearForm&, const LinearForm&);
    friend bool operator<(const LinearForm&, const LinearForm&);
};

struct EKFactor {
    int m = 0;
    LinearForm s;
    bool hat = true;

    friend bool operator==(const EKFactor&, const EKFactor&) = default;
    friend bool operator<(const EKFactor& a, const EKFactor& b);
};

struct EKMonomial {
    cplx coefficient = 1.0;
    std::vector<EKFactor> factors;

    // drop m = 0 factors and sort
    EKMonomial canonical() const;
};

class EKExpr {
public:
    EKExpr() = default;
    EKExpr(const EKMonomial& mono) { add(mono); }
    static EKExpr constant(cplx c);
    static EKExpr factor(int m, const LinearForm& s, bool hat = true, cplx c = 1.0);

    void add(const EKMonomial& mono);
    const std::map<std::vector<EKFactor>, cplx>& terms() const { return terms_; }
    std::vector<EKMonomial> monomials() const;
    bool is_zero() const { return terms_.empty(); }

    EKExpr& operator+=(const EKExpr& o);
    friend EKExpr operator+(EKExpr a, const EKExpr& b) { return a += b; }
    friend EKExpr operator-(EKExpr a, const EKExpr& b);
    friend EKExpr operator*(const EKExpr& a, const EKExpr& b);
    friend EKExpr operator*(cplx s, const EKExpr& a);

    // Rewrites every factor with a negative leading coefficient via e_m(-s) = (-1)^m e_m(s)
    // and merges; two expressions are equal iff their normalized forms coincide.
    EKExpr normalized() const;
    friend bool operator==(const EKExpr& a, const EKExpr& b);

    std::string to_string() const;
    static EKExpr parse(const std::string& text);

private:
    std::map<std::vector<EKFactor>, cplx> terms_;
};

struct GraphEdge {
    int from;        // vertex with coefficient +1
    int to;          // vertex with coefficient -1, or 0 for the external anchor
    int factor;      // index into the monomial's factor list
};

struct IndicatingGraph {
    int vertex_count = 0;
    std::vector<GraphEdge> edges;
    std::vector<int> constant_factors;  // factors with no vertex variable

    enum class Kind { trivial, chain, loop, tree, other };
    struct Component {
        std::vector<int> vertices;
        std::vector<int> edges;
        Kind kind;
    };
    std::vector<Component> components;

    std::vector<int> valency(bool outer) const;  // slot v for vertex v; in + out when both
    std::vector<int> total_valency() const;
    bool in_VD() const;  // every vertex has outer valency <= 1
};

IndicatingGraph build_graph(const EKMonomial& f, int n);

// Sum of holomorphic residues in z_var over all poles, or only at the pole where `at`
// (up to sign) vanishes.
EKExpr symbolic_residue(const EKExpr& f, int var, const std::optional<LinearForm>& at = std::nullopt);
EKExpr symbolic_reg_integrate_one(const EKExpr& f, int var);
EKExpr symbolic_reg_integrate_all(const EKExpr& f, int n);

EKExpr holomorphic_limit(const EKExpr& f);
EKExpr elliptic_completion(const EKExpr& f);

// zv[i] is the value of z_i (index 0 is the anchor), wv[j] the value of w_j.
cplx numeric_eval(const EKExpr& f, const std::vector<cplx>& zv, const std::vector<cplx>& wv,
                  const ModularPoint& m);

}  // namespace ekgw
