#include <doctest.h>

#include <vector>

#include "fibrecount/errors.hpp"
#include "fibrecount/field.hpp"
#include "fibrecount/poly.hpp"

using namespace fibrecount;

TEST_CASE("polynomial parse and text round trip") {
    FieldRef f5 = FieldSpec::make(5, 1);
    Poly f = Poly::parse(f5, "0,1,0,1"); // x^3 + x
    CHECK(f.degree() == 3);
    CHECK(f.to_string() == "0,1,0,1");
    CHECK(Poly::parse(f5, "3").degree() == 0);
    CHECK(Poly::zero(f5).to_string() == "0");

    // trailing zero coefficients normalize away
    CHECK(Poly::parse(f5, "1,2,0,0") == Poly::parse(f5, "1,2"));
    // coefficients reduce mod p, negatives included
    CHECK(Poly::parse(f5, "-1,6") == Poly::parse(f5, "4,1"));

    CHECK_THROWS_AS(Poly::parse(f5, ""), parse_error);
    CHECK_THROWS_AS(Poly::parse(f5, "1,,2"), parse_error);
    CHECK_THROWS_AS(Poly::parse(f5, "1,x"), parse_error);
}

TEST_CASE("bracketed coefficients address extension fields") {
    FieldRef f25 = FieldSpec::make(5, 2);
    Poly f = Poly::parse(f25, "0,[0,1],1,0,1"); // x^4 + x^2 + r x
    CHECK(f.degree() == 4);
    CHECK(f.coeff(1).coords() == std::vector<int64_t>{0, 1});
    CHECK(f.coeff(2).coords() == std::vector<int64_t>{1, 0});
    // plain integers lift into the prime subfield
    CHECK(Poly::parse(f25, "2,1").coeff(0).coords() == std::vector<int64_t>{2, 0});
    // a bracket group must list exactly n coordinates
    CHECK_THROWS_AS(Poly::parse(f25, "[1],1"), parse_error);
    CHECK_THROWS_AS(Poly::parse(f25, "[1,2,3],1"), parse_error);

    // flat_coords lays out (deg+1) rows of n coordinates
    std::vector<int64_t> flat = f.flat_coords();
    REQUIRE(flat.size() == 10);
    CHECK(flat[2] == 0); // row for c1 = (0, 1)
    CHECK(flat[3] == 1);
}

TEST_CASE("pretty printing uses descending powers") {
    FieldRef f17 = FieldSpec::make(17, 1);
    CHECK(Poly::parse(f17, "1,15,16,1,1").pretty() == "x^4 + x^3 + 16x^2 + 15x + 1");
    CHECK(Poly::parse(f17, "15,0,16,13,1").pretty() == "x^4 + 13x^3 + 16x^2 + 15");
    CHECK(Poly::zero(f17).pretty() == "0");
    CHECK(Poly::parse(f17, "7").pretty() == "7");
}

TEST_CASE("evaluation and arithmetic") {
    FieldRef f5 = FieldSpec::make(5, 1);
    Poly f = Poly::parse(f5, "0,1,0,1"); // x^3 + x
    CHECK(f.eval(f5->from_int(2)).is_zero()); // 8 + 2 = 10
    CHECK(f.eval(f5->from_int(1)).index() == 2);

    Poly a = Poly::parse(f5, "1,1"); // x + 1
    Poly b = Poly::parse(f5, "2,1"); // x + 2
    CHECK(a * b == Poly::parse(f5, "2,3,1"));
    CHECK(a + b == Poly::parse(f5, "3,2"));
    CHECK(a - b == Poly::parse(f5, "4"));

    CHECK_THROWS_AS(Poly::zero(f5).degree(), validation_error);
    CHECK_THROWS_AS(Poly::zero(f5).leading_coeff(), validation_error);
    CHECK(Poly::parse(f5, "1,1").coeff(7).is_zero());
}

TEST_CASE("derivative respects the characteristic") {
    FieldRef f5 = FieldSpec::make(5, 1);
    // d/dx x^5 = 5x^4 = 0
    CHECK(Poly::parse(f5, "0,0,0,0,0,1").derivative() == Poly::zero(f5));
    // d/dx (x^2 + x + 1) = 2x + 1
    CHECK(Poly::parse(f5, "1,1,1").derivative() == Poly::parse(f5, "1,2"));
}

TEST_CASE("separability") {
    FieldRef f5 = FieldSpec::make(5, 1);
    CHECK(Poly::parse(f5, "1,0,1").is_separable());      // x^2 + 1 = (x-2)(x+2)
    CHECK_FALSE(Poly::parse(f5, "1,3,1").is_separable()); // (x + 4)^2
    CHECK(Poly::parse(f5, "3").is_separable());           // constants are vacuously separable
    CHECK_THROWS_AS(Poly::zero(f5).is_separable(), validation_error);
    // x^5 - x = x(x-1)(x-2)(x-3)(x-4) over F_5; its derivative is the constant -1
    CHECK(Poly::parse(f5, "0,4,0,0,0,1").is_separable());
}

TEST_CASE("division and gcd") {
    FieldRef f5 = FieldSpec::make(5, 1);
    Poly num = Poly::parse(f5, "0,1,0,1");  // x^3 + x
    Poly den = Poly::parse(f5, "1,0,1");    // x^2 + 1
    auto [quot, rem] = divmod(num, den);
    CHECK(quot == Poly::parse(f5, "0,1"));
    CHECK(rem == Poly::zero(f5));

    auto [q2, r2] = divmod(Poly::parse(f5, "1,1,1"), Poly::parse(f5, "1,1"));
    CHECK(q2 == Poly::parse(f5, "0,1"));
    CHECK(r2 == Poly::parse(f5, "1"));

    // gcd(x^2 - 1, x - 1) = x - 1 = x + 4, returned monic
    CHECK(gcd(Poly::parse(f5, "4,0,1"), Poly::parse(f5, "4,1")) == Poly::parse(f5, "4,1"));
    CHECK(gcd(Poly::parse(f5, "1,0,1"), Poly::parse(f5, "2,1,1")).degree() == 0);
    CHECK_THROWS_AS(gcd(Poly::zero(f5), Poly::zero(f5)), validation_error);

    // gcd is monic even when the inputs are not: 3(x+1) and 2(x+1)(x+2)
    Poly g = gcd(Poly::parse(f5, "3,3"), Poly::parse(f5, "4,1,2"));
    CHECK(g == Poly::parse(f5, "1,1"));
}

TEST_CASE("subset products multiply the chosen covers") {
    FieldRef f5 = FieldSpec::make(5, 1);
    std::vector<Poly> polys{Poly::parse(f5, "1,1"), Poly::parse(f5, "2,1"), Poly::parse(f5, "3,1")};
    CHECK(subset_product(polys, 0b001) == polys[0]);
    CHECK(subset_product(polys, 0b011) == polys[0] * polys[1]);
    CHECK(subset_product(polys, 0b111) == polys[0] * polys[1] * polys[2]);
    CHECK_THROWS_AS(subset_product(polys, 0), validation_error);
    CHECK_THROWS_AS(subset_product(polys, 0b1000), validation_error);
}

TEST_CASE("monic scaling") {
    FieldRef f5 = FieldSpec::make(5, 1);
    CHECK(Poly::parse(f5, "2,4").monic() == Poly::parse(f5, "3,1"));
}
