#include "ekgw/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ekgw {

namespace {

void extend(const std::vector<int>& ground, std::size_t i, std::vector<std::vector<int>>& blocks,
            std::vector<SetPartition>& out) {
    if (i == ground.size()) {
        out.push_back({blocks, ground});
        return;
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        blocks[k].push_back(ground[i]);
        extend(ground, i + 1, blocks, out);
        blocks[k].pop_back();
    }
    blocks.push_back({ground[i]});
    extend(ground, i + 1, blocks, out);
    blocks.pop_back();
}

}  // namespace

std::vector<SetPartition> enumerate_partitions(std::vector<int> ground) {
    if (ground.size() > 12) throw DomainError("partition enumeration limited to 12 elements");
    std::sort(ground.begin(), ground.end());
    std::vector<SetPartition> out;
    std::vector<std::vector<int>> blocks;
    extend(ground, 0, blocks, out);
    std::sort(out.begin(), out.end());
    return out;
}

CycleDecomposition decompose(const std::vector<int>& ground, const std::vector<int>& image) {
    std::map<int, int> perm;
    for (std::size_t i = 0; i < ground.size(); ++i) perm[ground[i]] = image[i];
    CycleDecomposition d;
    std::map<int, bool> seen;
    for (auto [start, _] : perm) {
        if (seen[start]) continue;
        std::vector<int> cyc;
        for (int x = start; !seen[x]; x = perm.at(x)) {
            seen[x] = true;
            cyc.push_back(x);
        }
        d.cycles.push_back(cyc);
    }
    d.sign = ((ground.size() - d.cycles.size()) % 2) ? -1 : 1;
    std::vector<int> g = ground;
    std::sort(g.begin(), g.end());
    d.underlying_partition.ground_set = g;
    for (auto c : d.cycles) {
        std::sort(c.begin(), c.end());
        d.underlying_partition.blocks.push_back(c);
    }
    return d;
}

std::map<SetPartition, std::vector<CycleDecomposition>> enumerate_permutations_with_partition(
    std::vector<int> ground) {
    if (ground.size() > 9) throw DomainError("permutation enumeration limited to 9 elements");
    std::sort(ground.begin(), ground.end());
    std::map<SetPartition, std::vector<CycleDecomposition>> out;
    std::vector<int> image = ground;
    do {
        auto d = decompose(ground, image);
        out[d.underlying_partition].push_back(d);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

std::vector<std::uint64_t> bell_numbers(int n_max) {
    std::vector<std::uint64_t> bell{1};
    std::vector<std::uint64_t> row{1};
    for (int n = 1; n <= n_max; ++n) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto v : row) next.push_back(next.back() + v);
        row = next;
        bell.push_back(row.front());
    }
    return bell;
}

EpsPoly EpsPoly::monomial(Mask s, cplx c) {
    EpsPoly p;
    p.add(s, c);
    return p;
}

EpsPoly::Mask EpsPoly::mask_of(const std::vector<int>& indices) {
    Mask m = 0;
    for (int i : indices) {
        if (i < 0 || i > 31) throw DomainError("eps index out of range");
        m |= Mask(1) << i;
    }
    return m;
}

cplx EpsPoly::coefficient(Mask s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

void EpsPoly::add(Mask s, cplx c) {
    if (c == 0.0) return;
    cplx v = (terms_[s] += c);
    if (v == 0.0) terms_.erase(s);
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
    for (auto [s, c] : o.terms_) add(s, c);
    return *this;
}

EpsPoly operator-(EpsPoly a, const EpsPoly& b) {
    for (auto [s, c] : b.terms_) a.add(s, -c);
    return a;
}

EpsPoly operator*(cplx s, EpsPoly a) {
    EpsPoly r;
    for (auto [k, c] : a.terms_) r.add(k, s * c);
    return r;
}

EpsPoly eps_multiply(const EpsPoly& a, const EpsPoly& b) {
    EpsPoly r;
    for (auto [sa, ca] : a.terms())
        for (auto [sb, cb] : b.terms())
            if ((sa & sb) == 0) r.add(sa | sb, ca * cb);
    return r;
}

std::string EpsPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [s, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << format_complex(c) << ")";
        for (int i = 0; i < 32; ++i)
            if (s & (Mask(1) << i)) os << "*eps" << i;
    }
    return os.str();
}

}  // namespace ekgw
