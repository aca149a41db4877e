// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage error.
#include "tritrop/tritrop.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tritrop;

namespace {

/// Rows of fields: tab-separated, or space-aligned under --pretty.
class Table {
  public:
    /// Display width: UTF-8 code points.
    static std::size_t width_of(const std::string& s) {
        std::size_t n = 0;
        for (const unsigned char ch : s) n += (ch & 0xC0) != 0x80 ? 1 : 0;
        return n;
    }

    explicit Table(bool pretty) : pretty_(pretty) {}
    void row(std::vector<std::string> fields) { rows_.push_back(std::move(fields)); }
    void print(std::ostream& os) const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (width.size() <= i) width.push_back(0);
                width[i] = std::max(width[i], width_of(r[i]));
            }
        }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i > 0) line += pretty_ ? "  " : "\t";
                line += r[i];
                if (pretty_ && i + 1 < r.size()) line += std::string(width[i] - width_of(r[i]), ' ');
            }
            os << line << "\n";
        }
    }

  private:
    bool pretty_;
    std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
    return s;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string join(const std::vector<int>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << text;
}

PlaneCurve load_curve(const std::string& path) { return curve_from_polynomial(parse_polynomial(read_file(path))); }

std::vector<int> parse_cycle(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t pos = 0;
            const int e = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(e);
        } catch (const std::exception&) {
            throw DomainError("malformed cycle entry '" + item + "'");
        }
    }
    return out;
}

int cmd_genus(const std::string& file) {
    const auto g = parse_graph(read_file(file));
    std::cout << "vertices: " << g.vertex_count() << "\n";
    std::cout << "edges: " << g.edge_count() << "\n";
    std::cout << "genus: " << genus(g) << "\n";
    return 0;
}

int cmd_theta(const std::string& file, const std::string& cycle, bool non_effective) {
    const auto g = parse_graph(read_file(file));
    std::vector<ThetaCharacteristic> thetas;
    if (!cycle.empty()) {
        thetas.push_back(zharkov_effective(g, parse_cycle(cycle)));
    } else if (non_effective) {
        thetas.push_back(zharkov_non_effective(g));
    } else {
        thetas = all_theta_characteristics(g);
    }
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto& t = thetas[i];
        std::cout << "# theta " << i << (t.effective ? " effective cycle " + join(*t.cycle, ",") : " non-effective")
                  << " degree " << t.divisor.degree() << "\n";
        std::cout << serialize_divisor(t.divisor, g);
    }
    return 0;
}

int cmd_curve(const std::string& file, const std::string& svg, bool pretty) {
    const auto c = load_curve(file);
    Table t(pretty);
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        t.row({"vertex", std::to_string(i), c.vertices[i].x.pretty(), c.vertices[i].y.pretty()});
    }
    int bounded = 0;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto& e = c.edges[i];
        const std::string d = std::to_string(e.direction.x) + "," + std::to_string(e.direction.y);
        switch (e.kind) {
        case EdgeKind::segment:
            ++bounded;
            t.row({"segment", std::to_string(i), std::to_string(e.from), std::to_string(e.to), d,
                   "weight=" + std::to_string(e.weight), "length=" + e.length().pretty()});
            break;
        case EdgeKind::ray:
            t.row({"ray", std::to_string(i), std::to_string(e.from), d, "weight=" + std::to_string(e.weight)});
            break;
        case EdgeKind::line:
            t.row({"line", std::to_string(i), e.start.x.pretty() + "," + e.start.y.pretty(), d,
                   "weight=" + std::to_string(e.weight)});
            break;
        }
    }
    t.print(std::cout);
    const int g = c.vertices.empty() ? 0 : bounded - static_cast<int>(c.vertices.size()) + 1;
    std::cout << "genus: " << g << "\n";
    std::cout << "smooth: " << (is_smooth(c) ? "yes" : "no") << "\n";
    try {
        std::cout << "profile: " << degree_profile(c).str() << "\n";
    } catch (const DomainError&) {
        std::cout << "profile: other\n";
    }
    if (!svg.empty()) {
        Scene s;
        add_curve(s, c);
        s.title = "tropical curve";
        write_text(svg, render_svg(s));
    }
    return 0;
}

int cmd_intersect(const std::string& f1, const std::string& f2, bool certify, const std::string& svg, bool pretty) {
    const auto c1 = load_curve(f1);
    const auto c2 = load_curve(f2);
    const auto points = stable_intersection(c1, c2);
    Table t(pretty);
    for (const auto& p : points) t.row({"point", p.point.x.pretty(), p.point.y.pretty(), std::to_string(p.multiplicity)});
    t.print(std::cout);
    std::cout << "total: " << total_multiplicity(points) << "\n";
    if (certify) {
        const auto cert = tritangency_certificate(c1, c2);
        if (cert) {
            std::cout << "partition: " << join(cert->partition, " ") << "\n";
        } else {
            std::cout << "not tritangent\n";
        }
    }
    if (!svg.empty()) {
        Scene s;
        add_curve(s, c1);
        add_curve(s, c2, "conic");
        for (const auto& p : points) s.markers.push_back({p.point, p.multiplicity == 1 ? "" : std::to_string(p.multiplicity)});
        s.title = "stable intersection";
        write_text(svg, render_svg(s));
    }
    return 0;
}

std::string class_svg(const PlaneCurve& c, const TritangentClass& cls, std::size_t k) {
    const auto& rep = cls.representatives.front();
    Scene s;
    add_curve(s, c);
    add_curve(s, one_one_curve(rep.curve), "conic");
    add_divisor(s, rep.certificate.contact);
    for (const auto& ev : rep.certificate.events) {
        for (const auto& [a, b] : ev.segments) s.segments.push_back({a, b, 1, "stroke:#27ae60"});
    }
    s.title = "tritangent class " + std::to_string(k);
    return render_svg(s);
}

int cmd_tritangents(const std::string& file, const std::string& outdir, bool pretty) {
    const auto c = load_curve(file);
    const auto report = tritangent_report(c);
    for (std::size_t k = 0; k < report.classes.size(); ++k) {
        const auto& cls = report.classes[k];
        const auto& rep = cls.representatives.front();
        std::cout << "class " << k << "\n";
        std::cout << "theta: " << cls.theta_index << "\n";
        std::cout << "cycle: " << join(*cls.theta.cycle, ",") << "\n";
        std::cout << "family: " << (cls.family ? "yes" : "no") << "\n";
        std::cout << "representatives: " << cls.representatives.size() << "\n";
        std::cout << "heights: " << rep.curve.h10.pretty() << " " << rep.curve.h01.pretty() << " " << rep.curve.h11.pretty()
                  << "\n";
        std::cout << "partition: " << join(rep.certificate.partition, " ") << "\n";
        Table t(pretty);
        for (const auto& [p, m] : rep.certificate.contact) t.row({"contact", p.x.pretty(), p.y.pretty(), std::to_string(m)});
        t.print(std::cout);
    }
    std::cout << "classes: " << report.classes.size() << "\n";
    if (!outdir.empty()) {
        std::filesystem::create_directories(outdir);
        for (std::size_t k = 0; k < report.classes.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof name, "class_%02zu.svg", k);
            write_text((std::filesystem::path(outdir) / name).string(), class_svg(c, report.classes[k], k));
        }
    }
    return 0;
}

std::string v3(const Vec3& v) { return std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z); }

int cmd_lift(const std::string& file, const std::string& quadric, const std::string& svg, bool pretty) {
    const auto c = load_curve(file);
    const auto q = parse_quadric(read_file(quadric));
    const auto classes = enumerate_tritangents(c);
    const auto phi = make_lift_map(q, lift_cover(c, classes));
    const auto sextic = lift_curve(c, phi);
    const auto planes = tritangent_planes_of_lift(c, phi, classes);
    Table t(pretty);
    for (const auto& v : phi.face.vertices) t.row({"face", v.x.pretty(), v.y.pretty(), v.z.pretty()});
    for (std::size_t i = 0; i < sextic.vertices.size(); ++i) {
        const auto& v = sextic.vertices[i];
        t.row({"vertex", std::to_string(i), v.x.pretty(), v.y.pretty(), v.z.pretty()});
    }
    for (std::size_t i = 0; i < sextic.edges.size(); ++i) {
        const auto& e = sextic.edges[i];
        if (e.ray) {
            t.row({"ray", std::to_string(i), std::to_string(e.from), v3(e.direction), "weight=" + std::to_string(e.weight)});
        } else {
            t.row({"segment", std::to_string(i), std::to_string(e.from), std::to_string(e.to), v3(e.direction),
                   "weight=" + std::to_string(e.weight)});
        }
    }
    for (const auto& pl : planes) {
        t.row({"plane", std::to_string(pl.class_index), "theta=" + std::to_string(pl.theta_index), pl.plane.vertex.x.pretty(),
               pl.plane.vertex.y.pretty(), pl.plane.vertex.z.pretty(), "partition=" + join(pl.partition, ",")});
    }
    t.print(std::cout);
    std::cout << "classes: " << classes.size() << "\n";
    std::cout << "planes: " << planes.size() << "\n";
    if (!svg.empty()) {
        Scene s;
        add_space_curve(s, sextic);
        for (const auto& pl : planes) add_plane(s, pl.plane);
        s.title = "lifted sextic and tritangent planes";
        write_text(svg, render_svg(s));
    }
    return 0;
}

int cmd_real_counts(int g, int ovals, bool separating) {
    const RealTopologyType type{g, ovals, separating};
    const auto real = real_theta_counts(type);
    const auto all = odd_even_counts(g);
    std::cout << "genus: " << g << "\n";
    std::cout << "ovals: " << ovals << "\n";
    std::cout << "separating: " << (separating ? "yes" : "no") << "\n";
    std::cout << "odd: " << all.odd << "\n";
    std::cout << "even: " << all.even << "\n";
    std::cout << "real even: " << real.real_even << "\n";
    std::cout << "real odd: " << real.real_odd << "\n";
    if (g >= 1) std::cout << "lifting multiplicity: " << lifting_multiplicity(g) << "\n";
    return 0;
}

int cmd_emch_census(bool pretty) {
    const auto census = emch_census();
    Table t(pretty);
    t.row({"type", "count", "derivation", "ovals"});
    for (const auto& r : census.rows) t.row({r.type, std::to_string(r.count), r.derivation, r.ovals});
    t.print(std::cout);
    std::cout << "total: " << census.total << "\n";
    for (const auto& n : census.notes) std::cout << "note: " << n << "\n";
    return 0;
}

struct SearchArgs {
    std::string fixture;
    std::string q2;
    std::string c3;
    std::size_t seeds = 10000;
    std::uint64_t rng_seed = 1;
    double cluster = 1e-4;
    bool no_symmetry = false;
    std::string json;
};

int cmd_real_search(const SearchArgs& a, bool pretty) {
    AffineSextic s;
    if (!a.fixture.empty()) {
        if (!a.q2.empty() || !a.c3.empty()) throw CLI::ValidationError("--fixture excludes --q2/--c3");
        s = a.fixture == "clebsch" ? clebsch_sextic() : emch_sextic();
    } else {
        if (a.q2.empty() || a.c3.empty()) throw CLI::ValidationError("need --fixture or both --q2 and --c3");
        s.q2 = parse_real_polynomial(read_file(a.q2));
        s.c3 = parse_real_polynomial(read_file(a.c3));
        if (s.q2.degree() != 2) throw DomainError("q2 must have degree 2");
        if (s.c3.degree() != 3) throw DomainError("c3 must have degree 3");
        s.name = "custom";
        // seed sphere radius √|constant term of q2|, exact for centred spheres
        double r = 1;
        for (const auto& [e, c] : s.q2.terms()) {
            if (e == Poly3::Exponent{0, 0, 0}) r = std::max(r, std::sqrt(std::abs(c)));
        }
        s.radius = r;
    }
    SearchOptions o;
    o.seeds = a.seeds;
    o.rng_seed = a.rng_seed;
    o.cluster_radius = a.cluster;
    o.symmetrize = !a.no_symmetry;
    auto planes = search(s, o);
    const auto atlas = trace_ovals(s);
    std::map<std::string, int> hist;
    for (auto& p : planes) ++hist[classify_contacts(atlas, p)];
    std::cout << "curve: " << s.name << "\n";
    std::cout << "ovals: " << atlas.polylines.size() << "\n";
    std::cout << "planes: " << planes.size() << "\n";
    for (const auto& [k, v] : hist) std::cout << "label " << k << ": " << v << "\n";
    Table t(pretty);
    for (std::size_t i = 0; i < planes.size(); ++i) {
        const auto& p = planes[i];
        t.row({"plane", std::to_string(i), fixed(p.normal.x()), fixed(p.normal.y()), fixed(p.normal.z()), fixed(p.offset),
               p.label, sci(p.residual)});
    }
    t.print(std::cout);
    if (!a.json.empty()) {
        nlohmann::ordered_json j;
        j["curve"] = s.name;
        j["seeds"] = a.seeds;
        j["rng_seed"] = a.rng_seed;
        j["cluster_radius"] = a.cluster;
        j["ovals"] = atlas.names;
        j["planes"] = nlohmann::ordered_json::array();
        for (const auto& p : planes) {
            nlohmann::ordered_json e;
            e["normal"] = {p.normal.x(), p.normal.y(), p.normal.z()};
            e["offset"] = p.offset;
            e["contacts"] = nlohmann::ordered_json::array();
            for (const auto& c : p.contacts) e["contacts"].push_back({c.x(), c.y(), c.z()});
            e["contact_ovals"] = p.ovals;
            e["label"] = p.label;
            e["residual"] = p.residual;
            e["condition"] = p.condition;
            j["planes"].push_back(e);
        }
        j["labels"] = hist;
        const std::string text = j.dump(2) + "\n";
        if (a.json == "-") {
            std::cout << text;
        } else {
            write_text(a.json, text);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tropical curves, theta characteristics and tritangent planes"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Align columns");

    std::string file;
    std::string file2;
    std::string svg;

    auto* genus_cmd = app.add_subcommand("genus", "Genus of a metric graph");
    genus_cmd->add_option("graph", file, "Graph file")->required();

    std::string cycle;
    bool non_effective = false;
    auto* theta_cmd = app.add_subcommand("theta", "Tropical theta characteristics of a metric graph");
    theta_cmd->add_option("graph", file, "Graph file")->required();
    theta_cmd->add_option("--cycle", cycle, "Comma-separated edge ids of a cycle");
    theta_cmd->add_flag("--non-effective", non_effective, "Only the non-effective characteristic");

    auto* curve_cmd = app.add_subcommand("curve", "Tropical plane curve of a polynomial");
    curve_cmd->add_option("poly", file, "Polynomial file")->required();
    curve_cmd->add_option("--svg", svg, "Write an SVG drawing");

    bool certify = false;
    auto* intersect_cmd = app.add_subcommand("intersect", "Stable intersection of two plane curves");
    intersect_cmd->add_option("poly1", file, "First polynomial file")->required();
    intersect_cmd->add_option("poly2", file2, "Second polynomial file")->required();
    intersect_cmd->add_flag("--certify-tritangent", certify, "Check that the second curve is tritangent to the first");
    intersect_cmd->add_option("--svg", svg, "Write an SVG drawing");

    std::string outdir;
    auto* tri_cmd = app.add_subcommand("tritangents", "Tritangent (1,1)-curves of a smooth (3,3)-curve");
    tri_cmd->add_option("poly", file, "Polynomial file")->required();
    tri_cmd->add_option("--svg", outdir, "Directory for one SVG per class");

    std::string quadric;
    auto* lift_cmd = app.add_subcommand("lift", "Lift a (3,3)-curve and its tritangents onto a tropical quadric");
    lift_cmd->add_option("poly", file, "Polynomial file")->required();
    lift_cmd->add_option("--quadric", quadric, "Quadric file")->required();
    lift_cmd->add_option("--svg", svg, "Write a projected SVG drawing");

    int g = 0;
    int ovals = 0;
    bool separating = false;
    auto* counts_cmd = app.add_subcommand("real-counts", "Real theta characteristic counts");
    counts_cmd->add_option("--genus", g, "Genus")->required();
    counts_cmd->add_option("--ovals", ovals, "Number of real components")->required();
    counts_cmd->add_flag("--separating", separating, "The real curve separates");

    auto* census_cmd = app.add_subcommand("emch-census", "Totally-real tritangents of the Emch sextic by type");

    SearchArgs sa;
    auto* search_cmd = app.add_subcommand("real-search", "Numerical search for totally-real tritangent planes");
    search_cmd->add_option("--fixture", sa.fixture, "Built-in sextic")->check(CLI::IsMember({"clebsch", "emch"}));
    search_cmd->add_option("--q2", sa.q2, "Quadric as a real polynomial file");
    search_cmd->add_option("--c3", sa.c3, "Cubic as a real polynomial file");
    search_cmd->add_option("--seeds", sa.seeds, "Number of random seeds")->check(CLI::PositiveNumber);
    search_cmd->add_option("--rng-seed", sa.rng_seed, "Random seed");
    search_cmd->add_option("--cluster-radius", sa.cluster, "Deduplication radius in (n, c)")->check(CLI::PositiveNumber);
    search_cmd->add_flag("--no-symmetry", sa.no_symmetry, "Skip the symmetry post-pass");
    search_cmd->add_option("--json", sa.json, "Write JSON to a file, or - for standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*genus_cmd) return cmd_genus(file);
        if (*theta_cmd) return cmd_theta(file, cycle, non_effective);
        if (*curve_cmd) return cmd_curve(file, svg, pretty);
        if (*intersect_cmd) return cmd_intersect(file, file2, certify, svg, pretty);
        if (*tri_cmd) return cmd_tritangents(file, outdir, pretty);
        if (*lift_cmd) return cmd_lift(file, quadric, svg, pretty);
        if (*counts_cmd) return cmd_real_counts(g, ovals, separating);
        if (*census_cmd) return cmd_emch_census(pretty);
        if (*search_cmd) return cmd_real_search(sa, pretty);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
