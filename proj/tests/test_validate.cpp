#include <gtest/gtest.h>

#include "qfpc/validate.hpp"

using namespace qfpc;

namespace {

const ValidationReport& quick_report() {
    static const ValidationReport rep = run_validation("quick");
    return rep;
}

const CheckResult* find_check(const ValidationReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST(Validation, QuickSuitePasses) {
    const auto& rep = quick_report();
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail << " value=" << c.value;
    EXPECT_TRUE(rep.passed());
    EXPECT_GE(rep.checks.size(), 20u);
    const auto j = rep.json();
    EXPECT_EQ(j["suite"], "quick");
    EXPECT_EQ(j["passed"], true);
}

// A pipeline with the cross-channel sign flipped must be caught.
TEST(Validation, FlippedPushIsCaught) {
    auto base = default_evaluator();
    auto tampered = [base](const Kinematics& k, double z) {
        auto f = base(k, z);
        f[Channel::XZ] = -f[Channel::XZ];
        return f;
    };
    const auto rep = run_validation("quick", tampered);
    EXPECT_FALSE(rep.passed());
    const auto* push = find_check(rep, "push subdominance 0 < f_xz < |f_zz|");
    ASSERT_NE(push, nullptr);
    EXPECT_FALSE(push->passed);
    const auto* diag = find_check(rep, "diagonal channels are drags");
    ASSERT_NE(diag, nullptr);
    EXPECT_TRUE(diag->passed);
}

TEST(Validation, ThrowingEvaluatorIsRecordedNotFatal) {
    auto broken = [](const Kinematics&, double) -> ChannelValues { throw std::runtime_error("boom"); };
    const auto rep = run_validation("quick", broken);
    EXPECT_FALSE(rep.passed());
    for (const auto& c : rep.checks) {
        if (!c.passed && c.detail.find("boom") != std::string::npos) return;
    }
    FAIL() << "no check recorded the evaluator failure";
}

TEST(Validation, RejectsUnknownSuite) { EXPECT_THROW(run_validation("huge"), std::invalid_argument); }

TEST(Validation, PropertyGrid) {
    EXPECT_EQ(property_velocities(), (std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}));
    EXPECT_EQ(property_z_values(), (std::vector<double>{0.05, 0.5, 5.0, 50.0}));
}
