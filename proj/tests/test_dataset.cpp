#include <doctest.h>

#include <cmath>
#include <limits>

#include "fkrfe/dataset.hpp"

using namespace fkrfe;

namespace {

Dataset small_continuous() {
    Dataset d;
    d.n = 3;
    d.p = 2;
    d.x = {1, 2, 3, 4, 5, 6};
    d.y = Response::continuous({1.0, 2.0, 3.0});
    return d;
}

}  // namespace

TEST_CASE("well-formed dataset validates and is unchanged") {
    Dataset d = small_continuous();
    const Dataset& same = validate(d);
    CHECK(&same == &d);
    CHECK_NOTHROW(validate(validate(d)));  // idempotent
}

TEST_CASE("NaN in the matrix is located exactly") {
    Dataset d = small_continuous();
    d.x[1] = std::numeric_limits<double>::quiet_NaN();  // row 0, col 1
    try {
        validate(d);
        FAIL("expected NonFiniteValue");
    } catch (const NonFiniteValue& e) {
        CHECK(e.row == 0);
        CHECK(e.col == 1);
    }
}

TEST_CASE("categorical response with a missing level") {
    Dataset d = small_continuous();
    d.y = Response::categorical({0, 1, 0}, 3);  // level 2 never occurs
    try {
        validate(d);
        FAIL("expected EmptyLevel");
    } catch (const EmptyLevel& e) {
        CHECK(e.level == 2);
    }
}

TEST_CASE("length and size violations") {
    Dataset d = small_continuous();
    d.y = Response::continuous({1.0, 2.0});
    CHECK_THROWS_AS(validate(d), LengthMismatch);

    Dataset one_row;
    one_row.n = 1;
    one_row.p = 1;
    one_row.x = {1.0};
    one_row.y = Response::continuous({1.0});
    CHECK_THROWS_AS(validate(one_row), TooFewRows);

    Dataset named = small_continuous();
    named.feature_names = {"only_one"};
    CHECK_THROWS_AS(validate(named), LengthMismatch);
}

TEST_CASE("ActiveSet basics") {
    ActiveSet s = ActiveSet::of({4, 1, 4, 2});
    CHECK(s.indices == std::vector<std::size_t>{1, 2, 4});
    CHECK(s.contains(2));
    CHECK(!s.contains(3));
    CHECK(s.without(2).indices == std::vector<std::size_t>{1, 4});
    CHECK(ActiveSet::full(3).indices == std::vector<std::size_t>{0, 1, 2});
}
