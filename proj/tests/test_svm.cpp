#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "alsvm/error.hpp"
#include "alsvm/kernels.hpp"
#include "alsvm/model_io.hpp"
#include "alsvm/svm.hpp"
#include "qp_oracle.hpp"
#include "test_util.hpp"

using namespace alsvm;
using namespace alsvm::testutil;

namespace {

Dataset two_points() {
    Dataset d;
    d.push_back(ex(kPos, {{1, 1.0}}));
    d.push_back(ex(kNeg, {{1, -1.0}}));
    return d;
}

LinearModel model_with(std::vector<double> w, double b) {
    LinearModel m;
    m.weights = std::move(w);
    m.bias = b;
    return m;
}

// Per-example KKT check of the boxed dual at tolerance tau.
void expect_kkt(const LinearModel& m, const Dataset& d, const CostFactors& c, double tau) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double a = m.duals[i];
        const double upper = c.cost_for(d[i].label);
        const double margin = sign(d[i].label) * decision_value(m, d[i].features);
        ASSERT_GE(a, 0.0);
        ASSERT_LE(a, upper);
        if (a == 0.0)
            EXPECT_GE(margin, 1.0 - tau) << "i=" << i;
        else if (a == upper)
            EXPECT_LE(margin, 1.0 + tau) << "i=" << i;
        else
            EXPECT_NEAR(margin, 1.0, tau) << "i=" << i;
    }
}

}  // namespace

TEST(CostFactors, Validation) {
    EXPECT_THROW(CostFactors(0.0, 1.0), ArgumentError);
    EXPECT_THROW(CostFactors(1.0, -1.0), ArgumentError);
    EXPECT_THROW(CostFactors(INFINITY, 1.0), ArgumentError);
    EXPECT_THROW(CostFactors(1e300, 1e-300), ArgumentError);
    auto c = CostFactors::from_pa(4.0, 0.05);
    EXPECT_DOUBLE_EQ(c.cost_pos(), 0.2);
    EXPECT_DOUBLE_EQ(c.pa(), 4.0);
}

TEST(Train, TwoPointHardMargin) {
    auto d = two_points();
    auto m = train(d, CostFactors(10.0, 10.0));
    EXPECT_TRUE(m.diagnostics.converged);
    EXPECT_NEAR(m.weights[0], 1.0, 1e-3);
    EXPECT_NEAR(m.bias, 0.0, 1e-3);
    EXPECT_NEAR(std::abs(decision_value(m, d[0].features)), 1.0, 1e-3);
    EXPECT_NEAR(std::abs(decision_value(m, d[1].features)), 1.0, 1e-3);
}

TEST(Train, LowCapacityPaShiftsBiasTowardNegative) {
    auto d = two_points();
    auto balanced = train(d, CostFactors::from_pa(1.0, 0.05));
    auto amplified = train(d, CostFactors::from_pa(4.0, 0.05));
    // oracle: a = (0.2, 0.05) -> w = 0.25, b = 0.15; balanced b = 0
    auto ref = oracle::solve_enumeration(d.examples(), 0.2, 0.05);
    EXPECT_NEAR(amplified.bias, ref.bias, 1e-6);
    EXPECT_NEAR(amplified.weights[0], ref.weights[0], 1e-6);
    EXPECT_NEAR(balanced.bias, 0.0, 1e-9);
    EXPECT_GT(amplified.bias, balanced.bias);
}

TEST(Train, Errors) {
    Dataset pos_only;
    pos_only.push_back(ex(kPos, {{1, 1.0}}));
    pos_only.push_back(ex(kPos, {{1, 2.0}}));
    try {
        train(pos_only, CostFactors(1, 1));
        FAIL();
    } catch (const TrainingError& e) {
        EXPECT_STREQ(e.what(), "single-class training set");
    }
    EXPECT_THROW(train(Dataset{}, CostFactors(1, 1)), ArgumentError);
    SolverOptions bad;
    bad.max_epochs = 0;
    EXPECT_THROW(train(two_points(), CostFactors(1, 1), bad), ArgumentError);
    SolverOptions no_kkt;
    no_kkt.kkt_tolerance = 0.0;
    EXPECT_THROW(train(two_points(), CostFactors(1, 1), no_kkt), ArgumentError);
}

TEST(Train, EmptyFeatureVectorsParticipate) {
    Dataset d;
    d.push_back(ex(kPos, {}));
    d.push_back(ex(kNeg, {}));
    d.push_back(ex(kNeg, {}));
    auto m = train(d, CostFactors(1.0, 1.0));
    // Only the bias feature: min b^2/2 + (1-b)_+ + 2(1+b)_+  ->  b = -1
    EXPECT_TRUE(m.weights.empty());
    EXPECT_NEAR(m.bias, -1.0, 1e-3);
    auto ref = oracle::solve_projected_gradient(d.examples(), 1.0, 1.0);
    EXPECT_NEAR(m.bias, ref.bias, 1e-3);
}

TEST(Train, ReportsGapWhenEpochBudgetRunsOut) {
    std::mt19937_64 rng(5);
    auto d = random_instance(rng, 60, 3);
    SolverOptions opts;
    opts.max_epochs = 1;
    opts.tolerance = 1e-14;
    auto m = train(d, CostFactors(10, 10), opts);
    EXPECT_EQ(m.diagnostics.epochs, 1u);
    EXPECT_FALSE(m.diagnostics.converged);
    EXPECT_GT(m.diagnostics.relative_gap, opts.tolerance);
    EXPECT_NEAR(m.diagnostics.duality_gap, m.primal_objective - m.dual_objective, 1e-12);
}

TEST(Train, KktReconstructionAndWeakDuality) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = random_instance(rng, 2 + rng() % 40, 1 + rng() % 5);
        CostFactors c = CostFactors::from_pa(std::vector<double>{0.5, 1, 4}[rng() % 3],
                                             std::vector<double>{0.1, 1, 10}[rng() % 3]);
        auto m = train(d, c);
        ASSERT_TRUE(m.diagnostics.converged);
        EXPECT_LE(m.diagnostics.relative_gap, 1e-6);
        EXPECT_LE(m.diagnostics.kkt_violation, 1e-5);
        EXPECT_GE(m.primal_objective - m.dual_objective, -1e-9);
        expect_kkt(m, d, c, 1e-4);

        double b = 0;
        auto w = reconstruct_weights(m.duals, d.examples(), m.dimension(), &b);
        for (std::size_t j = 0; j < w.size(); ++j) EXPECT_NEAR(w[j], m.weights[j], 1e-8);
        EXPECT_NEAR(b, m.bias, 1e-8);
        EXPECT_NEAR(primal_objective(m, d.examples(), c), m.primal_objective, 1e-9 * (1 + m.primal_objective));
        EXPECT_NEAR(dual_objective(m.duals, d.examples()), m.dual_objective, 1e-9 * (1 + m.primal_objective));
    }
}

TEST(Train, MatchesOracleOnSmallInstances) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto d = random_instance(rng, 2 + rng() % 11, 1 + rng() % 3);
        const double cn = std::vector<double>{0.1, 1, 10}[rng() % 3];
        const double pa = std::vector<double>{0.5, 1, 4}[rng() % 3];
        auto m = train(d, CostFactors::from_pa(pa, cn));
        auto ref = oracle::solve_projected_gradient(d.examples(), pa * cn, cn);
        for (const auto& e : d.examples())
            EXPECT_NEAR(decision_value(m, e.features), oracle::decision_at(ref.weights, ref.bias, e.features), 1e-3);
        EXPECT_NEAR(m.primal_objective, ref.primal, 1e-4 * (1 + std::abs(ref.primal)));
    }
}

TEST(Train, DeterministicGivenShuffleSeed) {
    std::mt19937_64 rng(8);
    auto d = random_instance(rng, 80, 4);
    SolverOptions a, b;
    a.shuffle_seed = b.shuffle_seed = 1234;
    auto m1 = train(d, CostFactors(2, 1), a);
    auto m2 = train(d, CostFactors(2, 1), b);
    EXPECT_EQ(m1.weights, m2.weights);
    EXPECT_EQ(m1.bias, m2.bias);
    EXPECT_EQ(m1.duals, m2.duals);
    EXPECT_EQ(m1.diagnostics, m2.diagnostics);
}

TEST(Train, ScalarAndAvx2PathsAgree) {
    if (!simd::isa_available(simd::Isa::Avx2)) GTEST_SKIP();
    std::mt19937_64 rng(31);
    auto d = random_instance(rng, 200, 12);
    const auto before = simd::active_kernels().isa;
    simd::select_isa(simd::Isa::Scalar);
    auto ms = train(d, CostFactors(3, 1));
    simd::select_isa(simd::Isa::Avx2);
    auto mv = train(d, CostFactors(3, 1));
    simd::select_isa(before);
    EXPECT_NEAR(ms.primal_objective, mv.primal_objective, 1e-5 * (1 + ms.primal_objective));
    for (const auto& e : d.examples()) {
        simd::select_isa(simd::Isa::Scalar);
        double fs = decision_value(ms, e.features);
        double fv = decision_value(mv, e.features);
        simd::select_isa(before);
        EXPECT_NEAR(fs, fv, 1e-2);
    }
}

TEST(DefaultCostNeg, InverseMeanSquaredNorm) {
    Dataset d;
    d.push_back(ex(kPos, {{1, 1.0}}));           // 1
    d.push_back(ex(kNeg, {{1, 1.0}, {2, 2.0}}));  // 5
    EXPECT_DOUBLE_EQ(default_cost_neg(d.examples()), 1.0 / 3.0);
    Dataset empty_vectors;
    empty_vectors.push_back(ex(kPos, {}));
    EXPECT_DOUBLE_EQ(default_cost_neg(empty_vectors.examples()), 1.0);
    EXPECT_THROW(default_cost_neg({}), ArgumentError);
}

TEST(DecisionValue, Examples) {
    auto m = model_with({1.0, 0.0}, -0.5);
    EXPECT_DOUBLE_EQ(decision_value(m, SparseVector{{1, 2.0}}), 1.5);
    EXPECT_DOUBLE_EQ(decision_value(m, SparseVector{}), -0.5);
    EXPECT_DOUBLE_EQ(decision_value(m, SparseVector{{1, 2.0}, {7, 100.0}}), 1.5);
}

TEST(Predict, SignWithPositiveTie) {
    EXPECT_EQ(predict(model_with({}, 1.5), {}), kPos);
    EXPECT_EQ(predict(model_with({}, -0.01), {}), kNeg);
    EXPECT_EQ(predict(model_with({}, 0.0), {}), kPos);
}

TEST(Slack, Examples) {
    EXPECT_DOUBLE_EQ(slack(model_with({}, 1.5), ex(kPos, {})), 0.0);
    EXPECT_DOUBLE_EQ(slack(model_with({}, 0.2), ex(kPos, {})), 0.8);
    EXPECT_DOUBLE_EQ(slack(model_with({}, 0.2), ex(kNeg, {})), 1.2);
    EXPECT_DOUBLE_EQ(slack(model_with({}, 1.0), ex(kPos, {})), 0.0);
}

TEST(PrimalObjective, Examples) {
    auto d = two_points();
    EXPECT_DOUBLE_EQ(primal_objective(model_with({0.0}, 0.0), d.examples(), CostFactors(1, 1)), 2.0);

    auto m = train(d, CostFactors(10, 10));
    auto ref = oracle::solve_enumeration(d.examples(), 10, 10);
    EXPECT_NEAR(primal_objective(m, d.examples(), CostFactors(10, 10)), ref.primal, 1e-4);

    // fixed model: doubling C+ doubles the positive slack term
    Dataset e;
    e.push_back(ex(kPos, {{1, 0.1}}));
    e.push_back(ex(kNeg, {{1, 0.3}}));
    auto fixed = model_with({0.5}, 0.25);
    double base = primal_objective(fixed, e.examples(), CostFactors(1.0, 1.0));
    double doubled = primal_objective(fixed, e.examples(), CostFactors(2.0, 1.0));
    double pos_term = slack(fixed, e[0]);
    EXPECT_NEAR(doubled - base, pos_term, 1e-15);
    EXPECT_GT(pos_term, 0.0);
}

TEST(ModelIo, RoundTripAndFormat) {
    auto m = model_with({0.0, -1.25, 0.0, 3e-9}, 0.5);
    std::ostringstream out;
    write_model(out, m);
    EXPECT_EQ(out.str(), "bias 0.5\n2 -1.25\n4 3e-09\n");
    std::istringstream in(out.str());
    auto r = read_model(in);
    EXPECT_EQ(r.bias, 0.5);
    EXPECT_EQ(r.weights, m.weights);

    std::istringstream no_bias("1 2.0\n");
    EXPECT_THROW(read_model(no_bias), FormatError);
    std::istringstream descending("bias 0\n3 1\n2 1\n");
    EXPECT_THROW(read_model(descending), FormatError);
    std::istringstream empty("");
    EXPECT_THROW(read_model(empty), FormatError);
}

TEST(ModelIo, TrainedModelScoresIdenticallyAfterReload) {
    std::mt19937_64 rng(4);
    auto d = random_instance(rng, 50, 6);
    auto m = train(d, CostFactors(2, 1));
    std::stringstream buf;
    write_model(buf, m);
    auto r = read_model(buf);
    for (const auto& e : d.examples()) EXPECT_EQ(decision_value(m, e.features), decision_value(r, e.features));
}
