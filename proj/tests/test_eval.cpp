#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "conesta/eval.hpp"
#include "conesta/testing/instances.hpp"
#include "conesta/testing/oracles.hpp"

using namespace conesta;
using Eigen::VectorXd;

namespace {

// Labels giving the requested recall rates out of 1000 per class.
void fixture(double sens, double spec, std::vector<int>& y, std::vector<int>& pred)
{
    y.assign(2000, 0);
    std::fill(y.begin() + 1000, y.end(), 1);
    pred = y;
    const auto miss1 = static_cast<std::size_t>(std::lround((1.0 - sens) * 1000));
    const auto miss0 = static_cast<std::size_t>(std::lround((1.0 - spec) * 1000));
    for (std::size_t i = 0; i < miss0; ++i) pred[i] = 1;
    for (std::size_t i = 0; i < miss1; ++i) pred[1000 + i] = 0;
}

// Prediction pairs with b cases where only A is right and c where only B is.
void discordant(std::size_t b, std::size_t c, std::vector<int>& y, std::vector<int>& a, std::vector<int>& bb)
{
    y.assign(b + c + 10, 1);
    a = y;
    bb = y;
    for (std::size_t i = 0; i < b; ++i) bb[i] = 0;
    for (std::size_t i = 0; i < c; ++i) a[b + i] = 0;
}

} // namespace

TEST_CASE("balanced classification rate")
{
    std::vector<int> y, p;
    fixture(0.855, 0.855, y, p);
    EvalMetrics m = compute_metrics(y, p);
    CHECK(m.sensitivity == doctest::Approx(0.855).epsilon(1e-12));
    CHECK(m.bcr == doctest::Approx(0.855).epsilon(1e-12));
    fixture(0.684, 0.484, y, p);
    m = compute_metrics(y, p);
    CHECK(m.specificity == doctest::Approx(0.484).epsilon(1e-12));
    CHECK(m.bcr == doctest::Approx(0.584).epsilon(1e-12));
    CHECK(m.counts.tp + m.counts.tn + m.counts.fp + m.counts.fn == 2000);
    CHECK(balanced_classification_rate(0.684, 0.484) == doctest::Approx(0.584).epsilon(1e-15));

    m = compute_metrics(y, y);
    CHECK(m.sensitivity == 1.0);
    CHECK(m.specificity == 1.0);
    CHECK(m.bcr == 1.0);

    std::vector<int> idx(y.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), std::mt19937_64(3));
    std::vector<int> ys, ps;
    for (int i : idx) ys.push_back(y[std::size_t(i)]), ps.push_back(p[std::size_t(i)]);
    CHECK(compute_metrics(ys, ps).bcr == compute_metrics(y, p).bcr);

    CHECK_THROWS_WITH(compute_metrics({1, 1, 1}, {1, 0, 1}), doctest::Contains("degenerate test set"));
    CHECK_THROWS_AS(compute_metrics({0, 1}, {0}), InvalidArgument);
    CHECK_THROWS_AS(compute_metrics({0, 2}, {0, 1}), InvalidArgument);
}

TEST_CASE("probability threshold")
{
    VectorXd p(4);
    p << 0.1, 0.5, 0.5000001, 0.9;
    CHECK(labels_from_probabilities(p) == std::vector<int>{0, 1, 1, 1});
}

TEST_CASE("McNemar test")
{
    std::vector<int> y, a, b;
    discordant(0, 0, y, a, b);
    McNemarResult r = mcnemar_test(y, a, b);
    CHECK(r.p_value == 1.0);
    CHECK(r.kind == McNemarKind::exact);

    discordant(1, 9, y, a, b);
    r = mcnemar_test(y, a, b);
    CHECK(r.b == 1);
    CHECK(r.c == 9);
    CHECK(r.kind == McNemarKind::exact);
    CHECK(std::abs(r.p_value - oracles::binomial_two_sided(1, 9)) <= 1e-12);
    CHECK(std::abs(r.p_value - 22.0 / 1024.0) <= 1e-15);

    discordant(50, 50, y, a, b);
    r = mcnemar_test(y, a, b);
    CHECK(r.kind == McNemarKind::chi2_cc);
    CHECK(r.p_value == doctest::Approx(1.0));

    for (std::size_t bb = 0; bb < 25; ++bb) {
        for (std::size_t cc = 0; bb + cc < 25; ++cc) {
            CHECK(std::abs(mcnemar_exact_p(bb, cc) - oracles::binomial_two_sided(bb, cc)) <= 1e-12);
        }
    }

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t bb = std::uniform_int_distribution<std::size_t>(0, 24)(rng);
        const std::size_t cc = 24 - bb;
        discordant(bb, cc, y, a, b);
        const McNemarResult ab = mcnemar_test(y, a, b), ba = mcnemar_test(y, b, a);
        CHECK(ab.p_value == ba.p_value);
        CHECK(ab.b == ba.c);
        CHECK(ab.p_value >= 0.0);
        CHECK(ab.p_value <= 1.0);
        // Near the crossover both branches should tell the same story.
        const std::size_t b2 = bb + (trial % 2), c2 = cc + 1 - (trial % 2);
        CHECK(std::abs(mcnemar_exact_p(b2, c2) - mcnemar_chi2_p(b2, c2)) <= 0.02);
    }
    CHECK_THROWS_AS(mcnemar_test({0, 1}, {0}, {0, 1}), InvalidArgument);
}

TEST_CASE("weight slices")
{
    const auto vol = testing::random_instance({4, 3, 5}, 1, 0.6, 2).volume;
    const auto p = long(vol.size());
    const auto zero = export_weight_slices(VectorXd::Zero(p), vol, Axis::z, {0, 4});
    REQUIRE(zero.size() == 2);
    for (char ch : zero[0]) CHECK((ch == '0' || ch == ',' || ch == '\n'));

    VectorXd single = VectorXd::Zero(p);
    const std::size_t j = vol.size() / 2;
    single[long(j)] = -1.25;
    const Voxel v = vol.voxel_of(j);
    const auto csv = export_weight_slices(single, vol, Axis::z, {v.z})[0];
    // z slice: rows over y, columns over x.
    std::istringstream lines(csv);
    std::string line;
    std::size_t row = 0, nonzero = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            if (!cell.empty() && std::stod(cell) != 0.0) {
                ++nonzero;
                CHECK(row == v.y);
                CHECK(col == v.x);
                CHECK(std::stod(cell) == -1.25);
            }
            ++col;
        }
        ++row;
    }
    CHECK(row == 3);
    CHECK(nonzero == 1);

    const VectorXd beta = testing::random_vector(vol.size(), 9);
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
        const std::size_t extent = axis == Axis::x ? 4 : axis == Axis::y ? 3 : 5;
        std::vector<std::size_t> all(extent);
        std::iota(all.begin(), all.end(), std::size_t{0});
        const auto slices = export_weight_slices(beta, vol, axis, all);
        VectorXd rebuilt = VectorXd::Constant(p, NAN);
        for (std::size_t k = 0; k < extent; ++k) import_weight_slice(slices[k], vol, axis, k, rebuilt);
        CHECK(rebuilt == beta);
        CHECK_THROWS_AS(export_weight_slices(beta, vol, axis, {extent}), InvalidArgument);
    }
    CHECK(parse_axis("y") == Axis::y);
    CHECK_THROWS_AS(parse_axis("w"), InvalidArgument);
}

TEST_CASE("support overlap")
{
    VectorXd t(6);
    t << 0, 1, 1, 1, 1, 0;
    const GroundTruth truth = GroundTruth::from_beta(t);
    CHECK(support_stats(t, truth, 0.0).dice == 1.0);
    VectorXd disjoint(6);
    disjoint << 1, 0, 0, 0, 0, 1;
    CHECK(support_stats(disjoint, truth, 0.0).dice == 0.0);
    VectorXd half(6);
    half << 0, 0.5, 0.5, 0, 0, 0;
    const SupportStats s = support_stats(half, truth, 0.0);
    CHECK(s.dice == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(s.n_nonzero == 2);
    CHECK(support_stats(half, truth, 0.5).n_nonzero == 0);
    CHECK(support_stats(VectorXd::Zero(6), GroundTruth::from_beta(VectorXd::Zero(6)), 0.0).dice == 1.0);
    CHECK_THROWS_AS(support_stats(half, truth, -1.0), InvalidArgument);
    CHECK_THROWS_AS(support_stats(VectorXd::Zero(5), truth, 0.0), InvalidArgument);
}
