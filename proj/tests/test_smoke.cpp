#include <catch2/catch_amalgamated.hpp>

#include "liemod/complexity.hpp"
#include "liemod/report_json.hpp"

TEST_CASE("headers compile and the smallest pipeline runs") {
    const liemod::FieldContext F(2);
    REQUIRE(F.order() == 2);
    REQUIRE(liemod::factorial(4) == 24);
    const liemod::ComplexityCertificate c = liemod::assemble(2, 2);
    REQUIRE(c.certified);
    REQUIRE(c.value == 1);
    REQUIRE(liemod::certificate_to_json(c)["value"] == 1);
}
