#include <doctest.h>

#include <cmath>

#include "fkrfe/forest.hpp"

using namespace fkrfe;

namespace {

Dataset regression_line(std::size_t n, std::uint64_t seed_value,
                        double slope = 5.0, std::size_t p = 2) {
    // y = slope * x_0 + eps, remaining columns pure noise
    RngStream rng(seed_value);
    Dataset d;
    d.n = n;
    d.p = p;
    d.x.resize(n * p);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) d.x[i * p + j] = rng.normal();
        y[i] = slope * d.x[i * p] + rng.normal();
    }
    d.y = Response::continuous(std::move(y));
    return d;
}

}  // namespace

TEST_CASE("single row gives a single-leaf tree") {
    Dataset d;
    d.n = 2;
    d.p = 1;
    d.x = {1.0, 2.0};
    d.y = Response::continuous({3.5, 4.5});
    RngStream rng(1);
    std::vector<std::size_t> rows{0};
    Tree tree = fit_tree(d, rows, ActiveSet::full(1), ForestParams{},
                         Task::Regression, 0, rng);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].is_leaf());
    CHECK(tree.nodes[0].value == 3.5);
}

TEST_CASE("perfectly separable classification splits once, cleanly") {
    Dataset d;
    d.n = 20;
    d.p = 1;
    std::vector<int> labels(20);
    d.x.resize(20);
    for (std::size_t i = 0; i < 20; ++i) {
        d.x[i] = static_cast<double>(i) - 9.5;  // -9.5 .. 9.5
        labels[i] = d.x[i] < 0 ? 0 : 1;
    }
    d.y = Response::categorical(std::move(labels), 2);

    ForestParams params;
    params.mtry = 1;
    params.min_node_size = 1;
    RngStream rng(2);
    std::vector<std::size_t> rows(20);
    for (std::size_t i = 0; i < 20; ++i) rows[i] = i;
    Tree tree = fit_tree(d, rows, ActiveSet::full(1), params,
                         Task::Classification, 2, rng);

    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].feature == 0);
    CHECK(tree.nodes[0].threshold == 0.0);  // midpoint of -0.5 and 0.5
    for (std::size_t i = 0; i < 20; ++i)
        CHECK(tree.predict_class(d, i) == d.y.labels[i]);
}

TEST_CASE("constant response collapses to one leaf") {
    Dataset d;
    d.n = 10;
    d.p = 2;
    RngStream rng(3);
    d.x.resize(20);
    for (double& v : d.x) v = rng.normal();
    d.y = Response::continuous(std::vector<double>(10, 7.0));
    ForestParams params;
    params.min_node_size = 1;
    std::vector<std::size_t> rows(10);
    for (std::size_t i = 0; i < 10; ++i) rows[i] = i;
    Tree tree = fit_tree(d, rows, ActiveSet::full(2), params, Task::Regression,
                         0, rng);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].value == 7.0);
}

TEST_CASE("fully grown regression tree memorizes distinct rows") {
    Dataset d = regression_line(30, 17);
    ForestParams params;
    params.min_node_size = 1;
    params.mtry = 2;
    RngStream rng(5);
    std::vector<std::size_t> rows(d.n);
    for (std::size_t i = 0; i < d.n; ++i) rows[i] = i;
    Tree tree = fit_tree(d, rows, ActiveSet::full(d.p), params,
                         Task::Regression, 0, rng);
    CHECK(risk(tree, d, rows, Task::Regression) == doctest::Approx(0.0));
}

TEST_CASE("forest with one tree equals its tree pointwise") {
    Dataset d = regression_line(40, 8);
    ForestParams params;
    params.n_trees = 1;
    Forest forest = fit_forest(d, ActiveSet::full(d.p), params, SeedSpec{4});
    for (std::size_t i = 0; i < d.n; ++i)
        CHECK(forest.predict(d, i) == forest.trees[0].predict_value(d, i));
}

TEST_CASE("identical seeds give identical forests") {
    Dataset d = regression_line(50, 9);
    ForestParams params;
    params.n_trees = 25;
    Forest a = fit_forest(d, ActiveSet::full(d.p), params, SeedSpec{77}, 1);
    Forest b = fit_forest(d, ActiveSet::full(d.p), params, SeedSpec{77}, 8);
    REQUIRE(a.trees.size() == b.trees.size());
    CHECK(a.inbag == b.inbag);
    CHECK(a.oob == b.oob);
    for (std::size_t m = 0; m < a.trees.size(); ++m) {
        REQUIRE(a.trees[m].nodes.size() == b.trees[m].nodes.size());
        for (std::size_t k = 0; k < a.trees[m].nodes.size(); ++k) {
            CHECK(a.trees[m].nodes[k].feature == b.trees[m].nodes[k].feature);
            CHECK(a.trees[m].nodes[k].threshold ==
                  b.trees[m].nodes[k].threshold);
            CHECK(a.trees[m].nodes[k].value == b.trees[m].nodes[k].value);
        }
    }
}

TEST_CASE("inbag and oob partition the rows") {
    Dataset d = regression_line(60, 10);
    ForestParams params;
    params.n_trees = 30;
    Forest forest = fit_forest(d, ActiveSet::full(d.p), params, SeedSpec{5});
    for (std::size_t m = 0; m < forest.trees.size(); ++m) {
        CHECK(forest.inbag[m].size() == d.n);
        std::vector<char> in(d.n, 0);
        for (std::size_t row : forest.inbag[m]) in[row] = 1;
        for (std::size_t row : forest.oob[m]) {
            CHECK(!in[row]);
            in[row] = 2;
        }
        for (std::size_t i = 0; i < d.n; ++i) CHECK(in[i] != 0);
    }
}

TEST_CASE("mean OOB fraction approaches (1-1/n)^n") {
    Dataset d = regression_line(100, 11);
    ForestParams params;
    params.n_trees = 200;
    Forest forest = fit_forest(d, ActiveSet::full(d.p), params, SeedSpec{6});
    double total = 0;
    for (const auto& oob : forest.oob) total += static_cast<double>(oob.size());
    const double fraction = total / (200.0 * 100.0);
    CHECK(fraction == doctest::Approx(0.368).epsilon(0.14));  // 0.368 +- 0.05
}

TEST_CASE("prediction aggregation rules") {
    // two hand-built single-leaf trees
    Dataset d;
    d.n = 2;
    d.p = 1;
    d.x = {0.0, 1.0};
    d.y = Response::continuous({0.0, 0.0});

    Forest forest;
    forest.task = Task::Regression;
    Tree t1, t2;
    t1.nodes.push_back(TreeNode{});
    t1.nodes[0].value = 1.0;
    t2.nodes.push_back(TreeNode{});
    t2.nodes[0].value = 3.0;
    forest.trees = {t1, t2};
    CHECK(forest.predict(d, 0) == 2.0);

    // three voting trees: (0, 1, 1) -> class 1
    Forest cls;
    cls.task = Task::Classification;
    cls.n_classes = 2;
    Tree v0, v1;
    v0.nodes.push_back(TreeNode{});
    v0.nodes[0].class_counts = {5, 0};
    v1.nodes.push_back(TreeNode{});
    v1.nodes[0].class_counts = {0, 5};
    cls.trees = {v0, v1, v1};
    CHECK(cls.predict(d, 0) == 1.0);
}

TEST_CASE("risk hand values") {
    Dataset d;
    d.n = 2;
    d.p = 1;
    d.x = {0.0, 1.0};
    d.y = Response::continuous({0.0, 2.0});
    Tree constant;
    constant.nodes.push_back(TreeNode{});
    constant.nodes[0].value = 1.0;
    std::vector<std::size_t> rows{0, 1};
    CHECK(risk(constant, d, rows, Task::Regression) == 1.0);

    CHECK_THROWS_AS(
        risk(constant, d, std::vector<std::size_t>{}, Task::Regression),
        EmptySampleSet);
}

TEST_CASE("tree risk matches a brute-force recomputation on held-out rows") {
    Dataset d = regression_line(40, 12);
    std::vector<std::size_t> train, held;
    for (std::size_t i = 0; i < d.n; ++i)
        (i < 35 ? train : held).push_back(i);
    RngStream rng(13);
    Tree tree = fit_tree(d, train, ActiveSet::full(d.p), ForestParams{},
                         Task::Regression, 0, rng);
    double expected = 0;
    for (std::size_t row : held) {
        const double diff = d.y.values[row] - tree.predict_value(d, row);
        expected += diff * diff;
    }
    expected /= static_cast<double>(held.size());
    CHECK(risk(tree, d, held, Task::Regression) == doctest::Approx(expected));
}

TEST_CASE("oob_performance on pure noise approaches Var(y)") {
    RngStream rng(14);
    Dataset d;
    d.n = 300;
    d.p = 2;
    d.x.resize(600);
    for (double& v : d.x) v = rng.normal();
    std::vector<double> y(300);
    for (double& v : y) v = rng.normal();
    d.y = Response::continuous(y);

    ForestParams params;
    params.n_trees = 300;
    params.min_node_size = 300;  // every tree is a single leaf
    Forest forest = fit_forest(d, ActiveSet::full(2), params, SeedSpec{15});

    double mean = 0;
    for (double v : y) mean += v;
    mean /= 300.0;
    double var = 0;
    for (double v : y) var += (v - mean) * (v - mean);
    var /= 300.0;
    CHECK(oob_performance(forest, d) == doctest::Approx(var).epsilon(0.1));
}

TEST_CASE("oob_performance is positive for a memorizing regression forest") {
    Dataset d = regression_line(80, 16);
    ForestParams params;
    params.n_trees = 60;
    params.min_node_size = 1;
    Forest forest = fit_forest(d, ActiveSet::full(d.p), params, SeedSpec{17});
    CHECK(oob_performance(forest, d) > 0.0);
}

TEST_CASE("oob_performance zero when every tree votes the truth") {
    // x separates classes perfectly, so even OOB votes are always right
    Dataset d;
    d.n = 40;
    d.p = 1;
    d.x.resize(40);
    std::vector<int> labels(40);
    for (std::size_t i = 0; i < 40; ++i) {
        d.x[i] = i < 20 ? -1.0 - static_cast<double>(i) : 1.0 + static_cast<double>(i);
        labels[i] = i < 20 ? 0 : 1;
    }
    d.y = Response::categorical(std::move(labels), 2);
    ForestParams params;
    params.n_trees = 100;
    Forest forest = fit_forest(d, ActiveSet::full(1), params, SeedSpec{18});
    CHECK(oob_performance(forest, d) == 0.0);
}

TEST_CASE("permutation importance of a never-used feature is exactly zero") {
    // feature 1 is constant, so no split can ever use it
    RngStream rng(19);
    Dataset d;
    d.n = 50;
    d.p = 2;
    d.x.resize(100);
    std::vector<double> y(50);
    for (std::size_t i = 0; i < 50; ++i) {
        d.x[i * 2] = rng.normal();
        d.x[i * 2 + 1] = 4.0;
        y[i] = 2.0 * d.x[i * 2] + rng.normal();
    }
    d.y = Response::continuous(std::move(y));

    ForestParams params;
    params.n_trees = 50;
    Forest forest = fit_forest(d, ActiveSet::full(2), params, SeedSpec{20});
    for (const Tree& tree : forest.trees) CHECK(!tree.uses_feature(1));
    CHECK(permutation_importance(forest, d, 1, SeedSpec{21}) == 0.0);
}

TEST_CASE("informative feature out-ranks noise") {
    Dataset d = regression_line(200, 22, 5.0, 2);
    ForestParams params;
    params.n_trees = 500;
    Forest forest = fit_forest(d, ActiveSet::full(2), params, SeedSpec{23}, 4);
    const double informative = permutation_importance(forest, d, 0, SeedSpec{24});
    const double noise = permutation_importance(forest, d, 1, SeedSpec{24});
    CHECK(informative > noise);
    CHECK(noise < 0.05 * 25.0);  // well under Var(y) ~ 26
}

TEST_CASE("importance_ranking order and tie rule") {
    // two constant features tie at exactly zero importance
    RngStream rng(25);
    Dataset d;
    d.n = 40;
    d.p = 3;
    d.x.resize(120);
    std::vector<double> y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        d.x[i * 3] = rng.normal();
        d.x[i * 3 + 1] = 1.0;
        d.x[i * 3 + 2] = 2.0;
        y[i] = 3.0 * d.x[i * 3] + 0.1 * rng.normal();
    }
    d.y = Response::continuous(std::move(y));
    ForestParams params;
    params.n_trees = 40;
    Forest forest = fit_forest(d, ActiveSet::full(3), params, SeedSpec{26});
    auto ranking = importance_ranking(forest, d, SeedSpec{27});
    REQUIRE(ranking.size() == 3);
    CHECK(ranking[0].first == 2);  // tie at 0 -> larger index first
    CHECK(ranking[0].second == 0.0);
    CHECK(ranking[1].first == 1);
    CHECK(ranking[1].second == 0.0);
    CHECK(ranking[2].first == 0);
    CHECK(ranking[2].second > 0.0);

    // ranking is deterministic and thread-count independent
    auto again = importance_ranking(forest, d, SeedSpec{27}, 8);
    CHECK(again == ranking);
}

TEST_CASE("single active feature gives a singleton ranking") {
    Dataset d = regression_line(30, 28, 5.0, 1);
    ForestParams params;
    params.n_trees = 30;
    Forest forest = fit_forest(d, ActiveSet::full(1), params, SeedSpec{29});
    auto ranking = importance_ranking(forest, d, SeedSpec{30});
    REQUIRE(ranking.size() == 1);
    CHECK(ranking[0].first == 0);
}

TEST_CASE("monotone transform of one feature preserves row routing") {
    Dataset d = regression_line(30, 31, 5.0, 2);
    Dataset transformed = d;
    for (std::size_t i = 0; i < d.n; ++i) {
        const double v = d.x[i * 2];
        transformed.x[i * 2] = std::exp(v) + 2.0 * v;  // strictly increasing
    }
    std::vector<std::size_t> rows(d.n);
    for (std::size_t i = 0; i < d.n; ++i) rows[i] = i;

    ForestParams params;
    params.min_node_size = 2;
    RngStream rng_a(32), rng_b(32);
    Tree a = fit_tree(d, rows, ActiveSet::full(2), params, Task::Regression, 0,
                      rng_a);
    Tree b = fit_tree(transformed, rows, ActiveSet::full(2), params,
                      Task::Regression, 0, rng_b);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < d.n; ++i)
        CHECK(a.leaf_for(d, i) == b.leaf_for(transformed, i));
}
