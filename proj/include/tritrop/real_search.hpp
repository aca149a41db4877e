// Floating-point search for totally-real tritangent planes of a space sextic
// {q2 = 0} ∩ {c3 = 0} in affine 3-space. Newton with Armijo backtracking on
// the contact system, random seeds on the curve, deduplication in (n, c).
#pragma once

#include "tritrop/graph.hpp"
#include "tritrop/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tritrop {

using Vec3d = Eigen::Vector3d;

/// Real polynomial in x, y, z as a map from exponents to coefficients.
class Poly3 {
  public:
    using Exponent = std::array<int, 3>;

    Poly3() = default;
    static Poly3 constant(double c) {
        Poly3 p;
        p.add({0, 0, 0}, c);
        return p;
    }
    /// a·x + b·y + c·z + d
    static Poly3 linear(double a, double b, double c, double d) {
        Poly3 p;
        p.add({1, 0, 0}, a);
        p.add({0, 1, 0}, b);
        p.add({0, 0, 1}, c);
        p.add({0, 0, 0}, d);
        return p;
    }

    void add(const Exponent& e, double c) {
        if (c == 0.0) return;
        terms_[e] += c;
    }

    [[nodiscard]] const std::map<Exponent, double>& terms() const noexcept { return terms_; }

    [[nodiscard]] int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
        return d;
    }

    friend Poly3 operator+(const Poly3& a, const Poly3& b) {
        Poly3 r = a;
        for (const auto& [e, c] : b.terms_) r.add(e, c);
        return r;
    }
    friend Poly3 operator*(const Poly3& a, const Poly3& b) {
        Poly3 r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) r.add({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        }
        return r;
    }
    friend Poly3 operator*(double s, const Poly3& a) {
        Poly3 r;
        for (const auto& [e, c] : a.terms_) r.add(e, s * c);
        return r;
    }

    [[nodiscard]] double value(const Vec3d& p) const {
        double s = 0;
        for (const auto& [e, c] : terms_) s += c * mono(p, e, -1, -1);
        return s;
    }
    [[nodiscard]] Vec3d gradient(const Vec3d& p) const {
        Vec3d g = Vec3d::Zero();
        for (const auto& [e, c] : terms_) {
            for (int i = 0; i < 3; ++i) {
                if (e[static_cast<std::size_t>(i)] > 0) g[i] += c * e[static_cast<std::size_t>(i)] * mono(p, e, i, -1);
            }
        }
        return g;
    }
    [[nodiscard]] Eigen::Matrix3d hessian(const Vec3d& p) const {
        Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
        for (const auto& [e, c] : terms_) {
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    const int ei = e[static_cast<std::size_t>(i)];
                    const int ej = e[static_cast<std::size_t>(j)];
                    const double f = i == j ? ei * (ei - 1) : ei * ej;
                    if (f != 0) h(i, j) += c * f * mono(p, e, i, j);
                }
            }
        }
        return h;
    }

  private:
    /// Monomial with the exponents of i and j each lowered by one (−1: none).
    static double mono(const Vec3d& p, Exponent e, int i, int j) {
        if (i >= 0) --e[static_cast<std::size_t>(i)];
        if (j >= 0) --e[static_cast<std::size_t>(j)];
        double r = 1;
        for (int k = 0; k < 3; ++k) {
            for (int t = 0; t < e[static_cast<std::size_t>(k)]; ++t) r *= p[k];
        }
        return r;
    }

    std::map<Exponent, double> terms_;
};

struct AffineSextic {
    Poly3 q2;
    Poly3 c3;
    std::string name;
    double radius = 1; // seed sphere radius
    std::vector<Eigen::Matrix3d> symmetries; // orthogonal maps preserving the curve
};

inline Poly3 sphere(double r) {
    Poly3 q;
    q.add({2, 0, 0}, 1);
    q.add({0, 2, 0}, 1);
    q.add({0, 0, 2}, 1);
    q.add({0, 0, 0}, -r * r);
    return q;
}

/// Unit sphere and the Clebsch diagonal cubic.
inline AffineSextic clebsch_sextic() {
    AffineSextic s;
    s.name = "clebsch";
    s.q2 = sphere(1);
    Poly3 c;
    for (int i = 0; i < 3; ++i) {
        std::array<int, 3> e{0, 0, 0};
        e[static_cast<std::size_t>(i)] = 3;
        c.add(e, 81);
        e[static_cast<std::size_t>(i)] = 2;
        c.add(e, -9);
        e[static_cast<std::size_t>(i)] = 1;
        c.add(e, -9);
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            std::array<int, 3> f{0, 0, 0};
            f[static_cast<std::size_t>(i)] = 2;
            f[static_cast<std::size_t>(j)] = 1;
            c.add(f, -189);
        }
    }
    c.add({1, 1, 0}, 126);
    c.add({1, 0, 1}, 126);
    c.add({0, 1, 1}, 126);
    c.add({1, 1, 1}, 54);
    c.add({0, 0, 0}, 1);
    s.c3 = c;
    s.radius = 1;
    // coordinate permutations
    const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const auto& p : perms) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
        for (int i = 0; i < 3; ++i) m(i, p[static_cast<std::size_t>(i)]) = 1;
        s.symmetries.push_back(m);
    }
    return s;
}

/// Sphere of radius 5 and the cubic cylinder p(x, y) = 2 with
/// p = (x + √3)(x − y√3 − 3)(x + y√3 − 3).
inline AffineSextic emch_sextic() {
    AffineSextic s;
    s.name = "emch";
    s.q2 = sphere(5);
    const double r3 = std::sqrt(3.0);
    s.c3 = Poly3::linear(1, 0, 0, r3) * Poly3::linear(1, -r3, 0, -3) * Poly3::linear(1, r3, 0, -3) + Poly3::constant(-2);
    s.radius = 5;
    for (const double sy : {1.0, -1.0}) {
        for (const double sz : {1.0, -1.0}) s.symmetries.push_back(Vec3d(1, sy, sz).asDiagonal());
    }
    return s;
}

struct PlaneCandidate {
    Vec3d normal;
    double offset = 0;
    std::array<Vec3d, 3> contacts;
    double residual = 0;
    double condition = 0;
    std::string label; // (1,1,1), (2,1), (3) or unlabeled
    std::array<std::string, 3> ovals;
};

using SystemVector = Eigen::Matrix<double, 13, 1>;
using SystemMatrix = Eigen::Matrix<double, 13, 13>;

/// Unknowns (P1, P2, P3, n, c). Rows per point: q2, c3, n·P − c, n·(∇q2 × ∇c3);
/// last row |n|² − 1.
inline void tritangent_system(const AffineSextic& s, const SystemVector& z, SystemVector& f, SystemMatrix* jac = nullptr) {
    const Vec3d n = z.segment<3>(9);
    const double c = z[12];
    if (jac) jac->setZero();
    for (int i = 0; i < 3; ++i) {
        const Vec3d p = z.segment<3>(3 * i);
        const Vec3d gq = s.q2.gradient(p);
        const Vec3d gc = s.c3.gradient(p);
        const Vec3d t = gq.cross(gc);
        f[4 * i] = s.q2.value(p);
        f[4 * i + 1] = s.c3.value(p);
        f[4 * i + 2] = n.dot(p) - c;
        f[4 * i + 3] = n.dot(t);
        if (!jac) continue;
        const auto skew = [](const Vec3d& v) {
            Eigen::Matrix3d m;
            m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
            return m;
        };
        const Eigen::Matrix3d dt = -skew(gc) * s.q2.hessian(p) + skew(gq) * s.c3.hessian(p);
        jac->block<1, 3>(4 * i, 3 * i) = gq.transpose();
        jac->block<1, 3>(4 * i + 1, 3 * i) = gc.transpose();
        jac->block<1, 3>(4 * i + 2, 3 * i) = n.transpose();
        jac->block<1, 3>(4 * i + 2, 9) = p.transpose();
        (*jac)(4 * i + 2, 12) = -1;
        jac->block<1, 3>(4 * i + 3, 3 * i) = n.transpose() * dt;
        jac->block<1, 3>(4 * i + 3, 9) = t.transpose();
    }
    f[12] = n.squaredNorm() - 1;
    if (jac) jac->block<1, 3>(12, 9) = 2 * n.transpose();
}

struct SearchOptions {
    std::size_t seeds = 10000;
    std::uint64_t rng_seed = 1;
    double cluster_radius = 1e-4;
    double tolerance = 1e-12;
    int max_iterations = 100;
    bool symmetrize = true;
    std::size_t batch = 500;
};

namespace detail {

/// Gauss–Newton projection of x onto {q2 = 0, c3 = 0}.
inline std::optional<Vec3d> project_to_curve(const AffineSextic& s, Vec3d x) {
    for (int it = 0; it < 60; ++it) {
        const Eigen::Vector2d f(s.q2.value(x), s.c3.value(x));
        if (f.lpNorm<Eigen::Infinity>() < 1e-13) return x;
        Eigen::Matrix<double, 2, 3> j;
        j.row(0) = s.q2.gradient(x).transpose();
        j.row(1) = s.c3.gradient(x).transpose();
        const Eigen::Matrix2d jjt = j * j.transpose();
        if (std::abs(jjt.determinant()) < 1e-14) return std::nullopt;
        x -= j.transpose() * jjt.ldlt().solve(f);
        if (!x.allFinite() || x.norm() > 1e3 * (1 + s.radius)) return std::nullopt;
    }
    const Eigen::Vector2d f(s.q2.value(x), s.c3.value(x));
    if (f.lpNorm<Eigen::Infinity>() < 1e-10) return x;
    return std::nullopt;
}

inline Vec3d sphere_sample(std::mt19937_64& rng, double r) {
    std::normal_distribution<double> g(0, 1);
    Vec3d v(g(rng), g(rng), g(rng));
    while (v.norm() < 1e-9) v = Vec3d(g(rng), g(rng), g(rng));
    return r * v.normalized();
}

struct NewtonResult {
    SystemVector z;
    double residual = 0;
    double condition = 0;
};

inline std::optional<NewtonResult> newton(const AffineSextic& s, SystemVector z, const SearchOptions& o) {
    SystemVector f;
    SystemMatrix j;
    tritangent_system(s, z, f, &j);
    for (int it = 0; it < o.max_iterations; ++it) {
        const double norm2 = f.squaredNorm();
        if (std::sqrt(norm2) < o.tolerance) break;
        const Eigen::PartialPivLU<SystemMatrix> lu(j);
        if (std::abs(lu.determinant()) < 1e-300) return std::nullopt;
        const SystemVector step = lu.solve(-f);
        if (!step.allFinite()) return std::nullopt;
        double alpha = 1;
        SystemVector trial;
        SystemVector ft;
        for (;;) {
            trial = z + alpha * step;
            tritangent_system(s, trial, ft);
            if (ft.allFinite() && ft.squaredNorm() <= (1 - 1e-4 * alpha) * norm2) break;
            alpha /= 2;
            if (alpha < 1e-10) return std::nullopt;
        }
        z = trial;
        tritangent_system(s, z, f, &j);
        if ((alpha * step).norm() < 1e-15 * (1 + z.norm())) break;
    }
    NewtonResult r;
    r.z = z;
    r.residual = f.norm();
    if (!(r.residual < 1e-8)) return std::nullopt;
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(Eigen::MatrixXd(j)).singularValues();
    const double smin = sv.minCoeff();
    r.condition = smin > 0 ? sv.maxCoeff() / smin : std::numeric_limits<double>::infinity();
    return r;
}

/// Canonical candidate from a converged solution, or nullopt when contacts coincide.
inline std::optional<PlaneCandidate> canonical(const NewtonResult& r, double radius) {
    PlaneCandidate pc;
    pc.normal = r.z.segment<3>(9);
    pc.offset = r.z[12];
    for (int i = 0; i < 3; ++i) pc.contacts[static_cast<std::size_t>(i)] = r.z.segment<3>(3 * i);
    for (int i = 0; i < 3; ++i) {
        for (int k = i + 1; k < 3; ++k) {
            if ((pc.contacts[static_cast<std::size_t>(i)] - pc.contacts[static_cast<std::size_t>(k)]).norm() < radius) {
                return std::nullopt;
            }
        }
    }
    for (int i = 0; i < 3; ++i) {
        if (std::abs(pc.normal[i]) < 1e-9) continue;
        if (pc.normal[i] < 0) {
            pc.normal = -pc.normal;
            pc.offset = -pc.offset;
        }
        break;
    }
    std::sort(pc.contacts.begin(), pc.contacts.end(), [](const Vec3d& a, const Vec3d& b) {
        return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
    });
    pc.residual = r.residual;
    pc.condition = r.condition;
    return pc;
}

inline bool same_plane(const PlaneCandidate& a, const PlaneCandidate& b, double radius) {
    return (a.normal - b.normal).norm() < radius && std::abs(a.offset - b.offset) < radius;
}

inline void merge(std::vector<PlaneCandidate>& into, const PlaneCandidate& p, double radius) {
    for (const auto& q : into) {
        if (same_plane(p, q, radius)) return;
    }
    into.push_back(p);
}

inline SystemVector pack(const std::array<Vec3d, 3>& pts, const Vec3d& n, double c) {
    SystemVector z;
    for (int i = 0; i < 3; ++i) z.segment<3>(3 * i) = pts[static_cast<std::size_t>(i)];
    z.segment<3>(9) = n;
    z[12] = c;
    return z;
}

/// Seed plane through three curve points.
inline std::optional<SystemVector> seed_from_points(const std::array<Vec3d, 3>& pts) {
    const Vec3d n = (pts[1] - pts[0]).cross(pts[2] - pts[0]);
    if (n.norm() < 1e-12) return std::nullopt;
    const Vec3d u = n.normalized();
    return pack(pts, u, u.dot(pts[0]));
}

} // namespace detail

/// Polishes a starting guess; nullopt when Newton fails or contacts coincide.
inline std::optional<PlaneCandidate> polish(const AffineSextic& s, const std::array<Vec3d, 3>& pts, const Vec3d& n,
                                            double c, const SearchOptions& o = {}) {
    const auto r = detail::newton(s, detail::pack(pts, n, c), o);
    if (!r) return std::nullopt;
    return detail::canonical(*r, 1e-3 * s.radius);
}

/// Sorted, deduplicated totally-real tritangent planes found from `seeds`
/// random triples of curve points. Batches use independent rng streams, so
/// the result does not depend on the thread count.
inline std::vector<PlaneCandidate> search(const AffineSextic& s, const SearchOptions& o = {}) {
    if (o.seeds < 1) throw DomainError("need at least one seed");
    const std::size_t nb = (o.seeds + o.batch - 1) / o.batch;
    std::vector<std::vector<PlaneCandidate>> found(nb);
    parallel_for(nb, [&](std::size_t b) {
        std::seed_seq seq{static_cast<std::uint32_t>(o.rng_seed), static_cast<std::uint32_t>(o.rng_seed >> 32),
                          static_cast<std::uint32_t>(b)};
        std::mt19937_64 rng(seq);
        const std::size_t count = std::min(o.batch, o.seeds - b * o.batch);
        for (std::size_t k = 0; k < count; ++k) {
            std::array<Vec3d, 3> pts;
            bool ok = true;
            for (auto& p : pts) {
                const auto q = detail::project_to_curve(s, detail::sphere_sample(rng, s.radius));
                if (!q) {
                    ok = false;
                    break;
                }
                p = *q;
            }
            if (!ok) continue;
            const auto z = detail::seed_from_points(pts);
            if (!z) continue;
            const auto r = detail::newton(s, *z, o);
            if (!r) continue;
            if (const auto pc = detail::canonical(*r, 1e-3 * s.radius)) detail::merge(found[b], *pc, o.cluster_radius);
        }
    });
    std::vector<PlaneCandidate> out;
    for (const auto& f : found) {
        for (const auto& p : f) detail::merge(out, p, o.cluster_radius);
    }
    if (o.symmetrize) {
        // images under the symmetry group, polished, until nothing new appears
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (const auto& g : s.symmetries) {
                std::array<Vec3d, 3> pts;
                for (int k = 0; k < 3; ++k) pts[static_cast<std::size_t>(k)] = g * out[i].contacts[static_cast<std::size_t>(k)];
                const auto pc = polish(s, pts, g * out[i].normal, out[i].offset, o);
                if (pc) detail::merge(out, *pc, o.cluster_radius);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PlaneCandidate& a, const PlaneCandidate& b) {
        const std::array<double, 4> ka{a.normal.x(), a.normal.y(), a.normal.z(), a.offset};
        const std::array<double, 4> kb{b.normal.x(), b.normal.y(), b.normal.z(), b.offset};
        return ka < kb;
    });
    return out;
}

/// Real ovals traced as polylines, named N / S (entirely above / below
/// z = 0) and O1, O2, … by the angle of their centroid.
struct OvalAtlas {
    std::vector<std::string> names;
    std::vector<std::vector<Vec3d>> polylines;
    double step = 0;
};

inline OvalAtlas trace_ovals(const AffineSextic& s, std::uint64_t rng_seed = 7, int starts = 400) {
    OvalAtlas atlas;
    atlas.step = 0.01 * s.radius;
    std::mt19937_64 rng(rng_seed);
    const auto near = [&](const Vec3d& p) {
        for (const auto& line : atlas.polylines) {
            for (const auto& q : line) {
                if ((p - q).norm() < 3 * atlas.step) return true;
            }
        }
        return false;
    };
    for (int k = 0; k < starts; ++k) {
        const auto start = detail::project_to_curve(s, detail::sphere_sample(rng, s.radius));
        if (!start || near(*start)) continue;
        std::vector<Vec3d> line{*start};
        Vec3d p = *start;
        bool closed = false;
        for (int it = 0; it < 200000; ++it) {
            Vec3d t = s.q2.gradient(p).cross(s.c3.gradient(p));
            if (t.norm() < 1e-12) break;
            t.normalize();
            if (line.size() > 1 && t.dot(line.back() - line[line.size() - 2]) < 0) t = -t;
            const auto q = detail::project_to_curve(s, p + atlas.step * t);
            if (!q) break;
            p = *q;
            if (line.size() > 10 && (p - *start).norm() < atlas.step) {
                closed = true;
                break;
            }
            line.push_back(p);
        }
        if (closed) atlas.polylines.push_back(std::move(line));
    }
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < atlas.polylines.size(); ++i) {
        const auto& l = atlas.polylines[i];
        Vec3d c = Vec3d::Zero();
        for (const auto& p : l) c += p;
        c /= static_cast<double>(l.size());
        order.emplace_back(std::atan2(c.y(), c.x()), i);
    }
    std::sort(order.begin(), order.end());
    atlas.names.assign(atlas.polylines.size(), "");
    int next = 1;
    for (const auto& [angle, i] : order) {
        const auto& l = atlas.polylines[i];
        const bool up = std::all_of(l.begin(), l.end(), [](const Vec3d& p) { return p.z() > 0; });
        const bool down = std::all_of(l.begin(), l.end(), [](const Vec3d& p) { return p.z() < 0; });
        atlas.names[i] = up ? "N" : (down ? "S" : "O" + std::to_string(next++));
    }
    return atlas;
}

/// Oval name of a curve point, empty when no traced oval is close.
inline std::string oval_of(const OvalAtlas& atlas, const Vec3d& p) {
    double best = std::numeric_limits<double>::infinity();
    std::string name;
    for (std::size_t i = 0; i < atlas.polylines.size(); ++i) {
        for (const auto& q : atlas.polylines[i]) {
            const double d = (p - q).norm();
            if (d < best) {
                best = d;
                name = atlas.names[i];
            }
        }
    }
    return best < 2 * atlas.step ? name : "";
}

/// (1,1,1), (2,1) or (3) by the ovals holding the contacts; "unlabeled" when
/// a contact is on no traced oval.
inline std::string classify_contacts(const OvalAtlas& atlas, PlaneCandidate& plane) {
    std::map<std::string, int> hits;
    for (std::size_t i = 0; i < 3; ++i) {
        plane.ovals[i] = oval_of(atlas, plane.contacts[i]);
        if (plane.ovals[i].empty()) {
            plane.label = "unlabeled";
            return plane.label;
        }
        ++hits[plane.ovals[i]];
    }
    std::vector<int> part;
    for (const auto& [k, v] : hits) part.push_back(v);
    std::sort(part.rbegin(), part.rend());
    plane.label = part.size() == 3 ? "(1,1,1)" : (part.size() == 2 ? "(2,1)" : "(3)");
    return plane.label;
}

} // namespace tritrop
