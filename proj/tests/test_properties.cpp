#include <doctest.h>

#include "property_suites.hpp"

using namespace galcoh;

namespace {
constexpr std::uint64_t kSeed = 0x5eed2024;
}

TEST_CASE("snf identities hold on random matrices") {
    auto r = props::snf_identities(kSeed, 400);
    CHECK_MESSAGE(r.ok(), r.first_failure);
    CHECK(r.cases >= 400);
}

TEST_CASE("transfer is independent of the coset section") {
    auto r = props::transfer_section_independence(kSeed + 1, 400);
    CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("transfer multiplication-by-index law") {
    auto r = props::transfer_mult_index_law(kSeed + 2, 400);
    CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("diamond powers compose and localize") {
    auto r = props::power_composition_and_ab_compatibility(kSeed + 3, 300);
    CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("the period divides every splitting degree found") {
    auto r = props::period_divides_splitting_degrees(kSeed + 4, 300);
    CHECK_MESSAGE(r.ok(), r.first_failure);
}
