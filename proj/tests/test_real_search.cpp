#include "tritrop/real_search.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tritrop;

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Values of c3 on the circle where the plane meets the sphere {q2 = 0},
/// skipping arcs within `gap` of a contact. A totally-real tritangent
/// touches without crossing, so the remaining values share one sign.
bool circle_keeps_sign(const AffineSextic& s, const PlaneCandidate& p, double sphere_radius, double gap) {
    const Vec3d n = p.normal.normalized();
    const Vec3d centre = p.offset * n;
    const double rho2 = sphere_radius * sphere_radius - p.offset * p.offset;
    if (rho2 <= 0) return false;
    const double rho = std::sqrt(rho2);
    const Vec3d a = n.unitOrthogonal();
    const Vec3d b = n.cross(a);
    int sign = 0;
    for (int k = 0; k < 20000; ++k) {
        const double t = 2 * kPi * k / 20000;
        const Vec3d x = centre + rho * (std::cos(t) * a + std::sin(t) * b);
        bool near = false;
        for (const auto& c : p.contacts) near = near || (x - c).norm() < gap;
        if (near) continue;
        const double v = s.c3.value(x);
        const int sg = v > 0 ? 1 : -1;
        if (sign == 0) sign = sg;
        if (sg != sign) return false;
    }
    return true;
}

Eigen::Matrix3d cycle3() {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 1) = m(1, 2) = m(2, 0) = 1;
    return m;
}

const std::vector<PlaneCandidate>& clebsch_planes() {
    static const auto planes = [] {
        SearchOptions o;
        o.seeds = 3000;
        return search(clebsch_sextic(), o);
    }();
    return planes;
}

} // namespace

TEST(Poly3, ValueGradientHessian) {
    // x²y + 3z − 2
    Poly3 p;
    p.add({2, 1, 0}, 1);
    p.add({0, 0, 1}, 3);
    p.add({0, 0, 0}, -2);
    const Vec3d x(2, -1, 0.5);
    EXPECT_DOUBLE_EQ(p.value(x), -4 + 1.5 - 2);
    EXPECT_TRUE(p.gradient(x).isApprox(Vec3d(-4, 4, 3)));
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 0) = -2;
    h(0, 1) = h(1, 0) = 4;
    EXPECT_TRUE(p.hessian(x).isApprox(h));
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ((p * p).degree(), 6);
}

TEST(Fixtures, EmchCubicExpands) {
    const auto s = emch_sextic();
    const double r3 = std::sqrt(3.0);
    for (const Vec3d& x : {Vec3d(0.3, -1.2, 4), Vec3d(-2, 0.5, -1)}) {
        const double want = (x.x() + r3) * (x.x() - x.y() * r3 - 3) * (x.x() + x.y() * r3 - 3) - 2;
        EXPECT_NEAR(s.c3.value(x), want, 1e-12);
    }
}

TEST(Fixtures, SymmetriesPreserveTheCurve) {
    for (const auto& s : {clebsch_sextic(), emch_sextic()}) {
        std::mt19937_64 rng(3);
        for (int k = 0; k < 20; ++k) {
            const auto p = detail::project_to_curve(s, detail::sphere_sample(rng, s.radius));
            ASSERT_TRUE(p.has_value());
            for (const auto& g : s.symmetries) {
                EXPECT_NEAR(s.q2.value(g * *p), 0, 1e-9);
                EXPECT_NEAR(s.c3.value(g * *p), 0, 1e-9);
            }
        }
    }
}

TEST(TritangentSystem, ClebschSymmetricPlanePolishes) {
    // the curve point farthest along (1,1,1) and its two rotations
    const auto s = clebsch_sextic();
    const Vec3d n = Vec3d(1, 1, 1).normalized();
    std::mt19937_64 rng(5);
    Vec3d best = Vec3d::Zero();
    double top = -1e9;
    for (int k = 0; k < 4000; ++k) {
        const auto p = detail::project_to_curve(s, detail::sphere_sample(rng, s.radius));
        if (p && n.dot(*p) > top) {
            top = n.dot(*p);
            best = *p;
        }
    }
    const Eigen::Matrix3d r = cycle3();
    const auto pc = polish(s, {best, r * best, r * r * best}, n, top);
    ASSERT_TRUE(pc.has_value());
    EXPECT_LT(pc->residual, 1e-10);
    EXPECT_LT((pc->normal - n).norm(), 1e-8);
    EXPECT_NEAR(pc->offset, top, 1e-3);
    EXPECT_TRUE(circle_keeps_sign(s, *pc, 1, 0.05));
}

TEST(TritangentSystem, CoincidentContactsAreSingular) {
    const auto s = clebsch_sextic();
    std::mt19937_64 rng(8);
    const auto p = detail::project_to_curve(s, detail::sphere_sample(rng, 1));
    const auto q = detail::project_to_curve(s, detail::sphere_sample(rng, 1));
    ASSERT_TRUE(p && q);
    const Vec3d n = Vec3d(0.2, -0.4, 1).normalized();
    SystemVector f;
    SystemMatrix j;
    tritangent_system(s, detail::pack({*p, *p, *q}, n, n.dot(*p)), f, &j);
    const Eigen::MatrixXd dense = j;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
    EXPECT_LT(svd.singularValues().minCoeff(), 1e-9 * svd.singularValues().maxCoeff());
}

TEST(TritangentSystem, RandomPointHasPositiveResidual) {
    const auto s = emch_sextic();
    SystemVector z;
    z << 1, 2, 3, -1, 0.5, 2, 4, -3, 1, 0.6, 0.8, 0, 1.5;
    SystemVector f;
    tritangent_system(s, z, f);
    EXPECT_GT(f.norm(), 1e-3);
}

TEST(TritangentSystem, JacobianMatchesFiniteDifferences) {
    const auto s = emch_sextic();
    SystemVector z;
    z << 1, 2, 3, -1, 0.5, 2, 4, -3, 1, 0.6, 0.8, 0, 1.5;
    SystemVector f;
    SystemMatrix j;
    tritangent_system(s, z, f, &j);
    const double h = 1e-6;
    for (int k = 0; k < 13; ++k) {
        SystemVector zp = z;
        SystemVector zm = z;
        zp[k] += h;
        zm[k] -= h;
        SystemVector fp;
        SystemVector fm;
        tritangent_system(s, zp, fp);
        tritangent_system(s, zm, fm);
        const SystemVector col = (fp - fm) / (2 * h);
        EXPECT_LT((col - j.col(k)).norm(), 1e-4 * (1 + col.norm())) << "column " << k;
    }
}

TEST(Search, ClebschPlanesAreTangentAndBounded) {
    const auto& planes = clebsch_planes();
    EXPECT_GE(planes.size(), 2U);
    EXPECT_LE(planes.size(), 8U);
    const auto s = clebsch_sextic();
    for (const auto& p : planes) {
        EXPECT_LT(p.residual, 1e-8);
        EXPECT_NEAR(p.normal.norm(), 1, 1e-12);
        EXPECT_TRUE(circle_keeps_sign(s, p, 1, 0.05));
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < a; ++b) EXPECT_GT((p.contacts[a] - p.contacts[b]).norm(), 1e-3);
        }
    }
}

TEST(Search, DeterministicAndSorted) {
    SearchOptions o;
    o.seeds = 3000;
    const auto again = search(clebsch_sextic(), o);
    const auto& planes = clebsch_planes();
    ASSERT_EQ(again.size(), planes.size());
    for (std::size_t i = 0; i < planes.size(); ++i) {
        EXPECT_EQ(again[i].normal, planes[i].normal);
        EXPECT_EQ(again[i].offset, planes[i].offset);
    }
    for (std::size_t i = 1; i < planes.size(); ++i) EXPECT_LE(planes[i - 1].normal.x(), planes[i].normal.x());
}

TEST(Search, SingleSeedIsValid) {
    SearchOptions o;
    o.seeds = 1;
    o.symmetrize = false;
    EXPECT_LE(search(clebsch_sextic(), o).size(), 1U);
    o.seeds = 0;
    EXPECT_THROW(search(clebsch_sextic(), o), DomainError);
}

TEST(Classify, ClebschPlanesTouchOneComponentThreeTimes) {
    const auto s = clebsch_sextic();
    const auto atlas = trace_ovals(s);
    ASSERT_EQ(atlas.polylines.size(), 1U);
    auto planes = clebsch_planes();
    for (auto& p : planes) EXPECT_EQ(classify_contacts(atlas, p), "(3)");
}

TEST(Classify, EmchOvalsAndLabels) {
    const auto s = emch_sextic();
    const auto atlas = trace_ovals(s);
    std::vector<std::string> names = atlas.names;
    std::sort(names.begin(), names.end());
    EXPECT_EQ(names, (std::vector<std::string>{"N", "O1", "O2", "O3", "S"}));
    SearchOptions o;
    o.seeds = 2000;
    auto planes = search(s, o);
    EXPECT_LE(planes.size(), 108U);
    std::map<std::string, int> hist;
    for (auto& p : planes) {
        EXPECT_TRUE(circle_keeps_sign(s, p, 5, 0.25));
        ++hist[classify_contacts(atlas, p)];
        if (p.label == "(1,1,1)") {
            std::set<std::string> o3(p.ovals.begin(), p.ovals.end());
            EXPECT_EQ(o3.size(), 3U);
        }
    }
    EXPECT_EQ(hist.count("unlabeled"), 0U);
    EXPECT_LE(hist["(1,1,1)"], 80);
    EXPECT_LE(hist["(2,1)"], 24);
    EXPECT_LE(hist["(3)"], 4);
}

TEST(Classify, FarPointIsUnlabeled) {
    const auto s = emch_sextic();
    const auto atlas = trace_ovals(s);
    PlaneCandidate p;
    p.contacts = {Vec3d(100, 0, 0), Vec3d(0, 100, 0), Vec3d(0, 0, 100)};
    EXPECT_EQ(classify_contacts(atlas, p), "unlabeled");
}
