#include "common.hpp"
#include "ekgw/combinatorics.hpp"

using namespace ekgw;

TEST_CASE("set partitions") {
    CHECK(enumerate_partitions({}).size() == 1);
    CHECK(enumerate_partitions({1, 2}).size() == 2);
    CHECK(enumerate_partitions({1, 2, 3, 4}).size() == 15);
    auto bell = bell_numbers(6);
    CHECK(bell[4] == 15);
    CHECK(bell[6] == 203);
}

TEST_CASE("permutations grouped by partition") {
    auto three = enumerate_permutations_with_partition({1, 2, 3});
    SetPartition block{{{1, 2, 3}}, {1, 2, 3}};
    REQUIRE(three.count(block));
    CHECK(three.at(block).size() == 2);
    for (const auto& c : three.at(block)) CHECK(c.sign == 1);
    SetPartition singles{{{1}, {2}, {3}}, {1, 2, 3}};
    CHECK(three.at(singles).size() == 1);

    std::size_t total = 0;
    for (const auto& [p, perms] : enumerate_permutations_with_partition({1, 2, 3, 4})) total += perms.size();
    CHECK(total == 24);
}

TEST_CASE("complete Bell polynomials") {
    std::vector<double> x{2.0, 3.0, 5.0};
    auto B = complete_bell_all(x, 1.0);
    CHECK(B[1] == 2.0);
    CHECK(B[2] == 2.0 * 2.0 + 3.0);
    CHECK(B[3] == 8.0 + 3 * 2.0 * 3.0 + 5.0);
}

TEST_CASE("square-free epsilon algebra") {
    EpsPoly e1 = EpsPoly::monomial(0b10, 1.0), e2 = EpsPoly::monomial(0b100, 2.0);
    CHECK((e1 * e1).terms().empty());
    CHECK((e1 * e2).coefficient(0b110) == 2.0);
    EpsPoly p = EpsPoly::one();
    for (int k = 1; k <= 3; ++k) p = p * (EpsPoly::one() + EpsPoly::monomial(EpsPoly::Mask(1) << k, 1.0));
    CHECK(p.terms().size() == 8);
}
