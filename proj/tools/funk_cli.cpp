// Command-line surface: distances, gauges, path lengths, metric spheres and
// balls, affine slices and the verification suites, with JSON/CSV/SVG output.
//
// Exit codes: 0 success, 1 verification failure, 2 parse error,
// 3 geometric precondition failure, 4 write failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "funk/funk.hpp"

namespace {

struct WriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

funk::Vec parse_point(const std::string& text) {
    funk::Vec out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
                ++used;
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(v);
        } catch (const std::exception&) {
            throw funk::ParseError("cannot parse coordinate \"" + token + "\" in \"" + text + "\"");
        }
    }
    if (out.empty() || !funk::all_finite(out))
        throw funk::ParseError("cannot parse point \"" + text + "\"");
    return out;
}

std::vector<funk::Vec> parse_frame(const std::string& text) {
    std::vector<funk::Vec> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ';')) out.push_back(parse_point(token));
    if (out.empty()) throw funk::ParseError("empty frame \"" + text + "\"");
    return out;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw WriteError("cannot open output file: " + out_path);
    out << content;
    out.flush();
    if (!out) throw WriteError("cannot write output file: " + out_path);
}

std::string fmt(double v) { return funk::format_sig12(v); }

void print_distance(const funk::ConvexBody& body, const funk::Vec& x, const funk::Vec& y) {
    auto fwd = funk::funk_distance(body, x, y);
    auto bwd = funk::funk_distance(body, y, x);
    std::cout << fmt(fwd.value) << " / " << fmt(bwd.value) << "\n";
    std::cout << "a+(x,y): "
              << (fwd.boundary_point ? funk::format_point(*fwd.boundary_point)
                                     : std::string("none (ray contained)"))
              << "\n";
    std::cout << "a+(y,x): "
              << (bwd.boundary_point ? funk::format_point(*bwd.boundary_point)
                                     : std::string("none (ray contained)"))
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Funk weak metric geometry kernel"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string dist_body, dist_from, dist_to;
    auto* dist = app.add_subcommand("dist", "Funk distance in both orientations");
    dist->add_option("body", dist_body, "body JSON file")->required();
    dist->add_option("--from", dist_from, "start point, comma-separated")->required();
    dist->add_option("--to", dist_to, "end point, comma-separated")->required();
    dist->callback([&] {
        auto body = funk::load_body_file(dist_body);
        print_distance(body, parse_point(dist_from), parse_point(dist_to));
    });

    std::string gauge_body, gauge_at, gauge_dir;
    auto* gauge = app.add_subcommand("gauge", "Minkowski gauge at a base point");
    gauge->add_option("body", gauge_body, "body JSON file")->required();
    gauge->add_option("--at", gauge_at, "base point")->required();
    gauge->add_option("--dir", gauge_dir, "direction")->required();
    gauge->callback([&] {
        auto body = funk::load_body_file(gauge_body);
        std::cout << fmt(funk::minkowski_gauge(body, parse_point(gauge_at),
                                               parse_point(gauge_dir)))
                  << "\n";
    });

    std::string length_body, length_path;
    int length_subdiv = 64;
    auto* length = app.add_subcommand("length", "Finsler length of a polyline path");
    length->add_option("body", length_body, "body JSON file")->required();
    length->add_option("--path", length_path, "path JSON file (vertex list)")->required();
    length->add_option("--subdivisions", length_subdiv, "quadrature panels per segment");
    length->callback([&] {
        auto body = funk::load_body_file(length_body);
        auto path = funk::load_path_file(length_path);
        funk::QuadratureSpec spec{length_subdiv};
        auto len = funk::path_length_detailed(funk::TautologicalStructure{body}, path, spec);
        std::cout << fmt(len.value) << "\n";
        std::cout << "refinement delta: " << funk::format_shortest(len.refinement_delta) << "\n";
    });

    struct SphereArgs {
        std::string body, center, side = "fwd", format = "json", out;
        double delta = 0;
        int dirs = 0;
    };
    SphereArgs sphere_args, ball_args;
    auto add_sphere_options = [](CLI::App* cmd, SphereArgs& args) {
        cmd->add_option("body", args.body, "body JSON file")->required();
        cmd->add_option("--center", args.center, "center point")->required();
        cmd->add_option("--delta", args.delta, "metric radius")->required();
        cmd->add_option("--side", args.side, "fwd|bwd")
            ->check(CLI::IsMember({"fwd", "bwd"}));
        cmd->add_option("--dirs", args.dirs, "direction count (0 = default)");
        cmd->add_option("--format", args.format, "json|csv|svg")
            ->check(CLI::IsMember({"json", "csv", "svg"}));
        cmd->add_option("--out", args.out, "output file (default stdout)");
    };
    auto run_sphere = [&](const SphereArgs& args, bool as_ball) {
        auto body = funk::load_body_file(args.body);
        auto center = parse_point(args.center);
        funk::SphereSample sample =
            args.side == "fwd" ? funk::forward_sphere(body, center, args.delta, args.dirs)
                               : funk::backward_sphere(body, center, args.delta, args.dirs);
        if (args.format == "json") {
            auto doc = funk::sphere_to_json(sample);
            doc["kind"] = as_ball ? "ball" : "sphere";
            emit(doc.dump(2) + "\n", args.out);
        } else if (args.format == "csv") {
            emit(funk::sphere_to_csv(sample), args.out);
        } else {
            emit(funk::sphere_to_svg(sample, body, 720, as_ball), args.out);
        }
    };
    auto* sphere = app.add_subcommand("sphere", "sample a forward or backward metric sphere");
    add_sphere_options(sphere, sphere_args);
    sphere->callback([&] { run_sphere(sphere_args, false); });
    auto* ball = app.add_subcommand("ball", "sample a metric ball (sphere boundary, filled SVG)");
    add_sphere_options(ball, ball_args);
    ball->callback([&] { run_sphere(ball_args, true); });

    std::string slice_body, slice_base, slice_frame, slice_from, slice_to;
    auto* slice = app.add_subcommand("slice", "compare distances on an affine slice");
    slice->add_option("body", slice_body, "body JSON file")->required();
    slice->add_option("--base", slice_base, "base point of the slice")->required();
    slice->add_option("--frame", slice_frame, "frame vectors, ';'-separated")->required();
    slice->add_option("--from", slice_from, "start point in slice coordinates")->required();
    slice->add_option("--to", slice_to, "end point in slice coordinates")->required();
    slice->callback([&] {
        auto body = funk::load_body_file(slice_body);
        auto base = parse_point(slice_base);
        auto frame = parse_frame(slice_frame);
        auto u = parse_point(slice_from);
        auto v = parse_point(slice_to);
        auto sliced = funk::affine_slice(body, base, frame);
        if (funk::dim_of(u) != sliced.dimension() || funk::dim_of(v) != sliced.dimension())
            throw funk::ParseError("slice points must have one coordinate per frame vector");
        funk::Vec pu = base, pv = base;
        for (std::size_t i = 0; i < frame.size(); ++i) {
            pu = funk::axpy(pu, u[i], frame[i]);
            pv = funk::axpy(pv, v[i], frame[i]);
        }
        double on_slice = funk::funk_distance(sliced, u, v).value;
        double ambient = funk::funk_distance(body, pu, pv).value;
        std::cout << "slice F:   " << fmt(on_slice) << "\n";
        std::cout << "ambient F: " << fmt(ambient) << "\n";
        std::cout << "difference: " << funk::format_shortest(std::abs(on_slice - ambient))
                  << "\n";
    });

    std::string verify_body, verify_suite = "all";
    std::uint64_t verify_seed = 1729;
    int verify_samples = 10000;
    auto* verify = app.add_subcommand("verify", "run the property suites");
    verify->add_option("body", verify_body, "body JSON file")->required();
    verify->add_option("--suite", verify_suite, "all|axioms|theorem|spheres|geodesics")
        ->check(CLI::IsMember({"all", "axioms", "theorem", "spheres", "geodesics"}));
    verify->add_option("--seed", verify_seed, "sampling seed");
    verify->add_option("--samples", verify_samples, "sample count for the property loops");
    verify->callback([&] {
        auto body = funk::load_body_file(verify_body);
        auto suite = funk::suite_from_name(verify_suite);
        auto report = funk::run_verification(body, *suite, verify_seed, verify_samples);
        std::string command;
        for (int i = 0; i < argc; ++i) {
            if (i) command += ' ';
            command += argv[i];
        }
        report.command = command;
        std::cout << funk::render_report(report);
        exit_code = report.all_pass() ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const funk::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const funk::GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const WriteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return exit_code;
}
