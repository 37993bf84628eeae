#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ekgw/types.hpp"

namespace ekgw {

struct SetPartition {
    std::vector<std::vector<int>> blocks;  // each sorted; blocks sorted by least element
    std::vector<int> ground_set;

    auto operator<=>(const SetPartition&) const = default;
};

std::vector<SetPartition> enumerate_partitions(std::vector<int> ground_set);

struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;  // each starts at its least element
    int sign = 1;
    SetPartition underlying_partition;
};

std::map<SetPartition, std::vector<CycleDecomposition>> enumerate_permutations_with_partition(
    std::vector<int> ground_set);

// Cycle decomposition of the permutation sending ground[i] to image[i].
CycleDecomposition decompose(const std::vector<int>& ground, const std::vector<int>& image);

// Bell numbers from the Bell triangle.
std::vector<std::uint64_t> bell_numbers(int n_max);

// Complete Bell polynomials B_0..B_m in x_1..x_m (x[k-1] = x_k), by
// B_{n+1} = sum_k C(n, k) B_{n-k} x_{k+1}.
template <class T>
std::vector<T> complete_bell_all(const std::vector<T>& x, T one) {
    std::size_t m = x.size();
    std::vector<T> B(m + 1, one * 0.0);
    B[0] = one;
    for (std::size_t n = 0; n < m; ++n) {
        T s = one * 0.0;
        double c = 1.0;  // C(n, k)
        for (std::size_t k = 0; k <= n; ++k) {
            s = s + (B[n - k] * x[k]) * c;
            c = c * double(n - k) / double(k + 1);
        }
        B[n + 1] = s;
    }
    return B;
}

template <class T>
T complete_bell(const std::vector<T>& x, T one) {
    return complete_bell_all(x, one).back();
}

// Square-free polynomials in eps_0..eps_31 modulo eps_k^2 = 0; monomials keyed by bitmask.
class EpsPoly {
public:
    using Mask = std::uint32_t;

    EpsPoly() = default;
    static EpsPoly one() { return monomial(0, 1.0); }
    static EpsPoly monomial(Mask s, cplx c);
    static Mask mask_of(const std::vector<int>& indices);

    const std::map<Mask, cplx>& terms() const { return terms_; }
    cplx coefficient(Mask s) const;
    void add(Mask s, cplx c);

    EpsPoly& operator+=(const EpsPoly& o);
    friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
    friend EpsPoly operator-(EpsPoly a, const EpsPoly& b);
    friend EpsPoly operator*(cplx s, EpsPoly a);
    friend bool operator==(const EpsPoly&, const EpsPoly&) = default;

    std::string to_string() const;

private:
    std::map<Mask, cplx> terms_;
};

EpsPoly eps_multiply(const EpsPoly& a, const EpsPoly& b);
inline EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) { return eps_multiply(a, b); }

}  // namespace ekgw
