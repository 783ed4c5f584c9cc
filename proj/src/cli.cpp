#include "glstab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "glstab/json_io.hpp"

namespace glstab::cli {

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw BadInput("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw BadInput("cannot write " + out_path);
    out << text;
}

Polynomial parse_poly_arg(const FieldSpec& f, const std::string& text) {
    std::vector<Scalar> cs;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) cs.push_back(Scalar::parse(f, tok));
    if (cs.empty()) throw BadInput("empty polynomial coefficient list");
    return Polynomial(f, std::move(cs));
}

struct Options {
    std::string field = "gf:2";
    int n = 2;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t samples = 10000;
    int jobs = 0;
    std::uint64_t seed = 1;
    std::string out;

    FieldSpec field_spec() const { return FieldSpec::parse(field); }
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--field", opt.field, "field spec: gf:p or q");
    cmd->add_option("--n", opt.n, "matrix side");
    cmd->add_option("--budget", opt.budget, "enumeration budget")->envname("GLSTAB_BUDGET");
    cmd->add_option("--samples", opt.samples, "sample count for randomized checks");
    cmd->add_option("--jobs", opt.jobs, "worker count (0 = all cores)")->envname("GLSTAB_JOBS");
    cmd->add_option("--seed", opt.seed, "RNG seed, recorded in reports for replay");
    cmd->add_option("--out", opt.out, "output path (default stdout)");
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"exact classification of invertibility-preserving linear maps on M_n(K)"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "emit machine-readable error JSON on failure");

    Options opt;
    int exit_code = 0;
    std::function<void()> action;

    // ---- build ----------------------------------------------------------
    auto* build = app.add_subcommand("build", "construct endomorphisms");
    build->require_subcommand(1);
    std::string p_path, q_path, sub_path, a_path, x_path;
    bool twisted = false;

    auto* build_u_cmd = build->add_subcommand("u", "M -> P M Q");
    add_common(build_u_cmd, opt);
    build_u_cmd->add_option("--P", p_path, "matrix JSON")->required();
    build_u_cmd->add_option("--Q", q_path, "matrix JSON")->required();
    build_u_cmd->callback([&] {
        action = [&] {
            Matrix p = matrix_from_json(read_json_file(p_path), opt.field_spec());
            Matrix q = matrix_from_json(read_json_file(q_path), opt.field_spec());
            emit(to_json(build_u(p, q)), opt.out);
        };
    });

    auto* build_v_cmd = build->add_subcommand("v", "M -> P M^t Q");
    add_common(build_v_cmd, opt);
    build_v_cmd->add_option("--P", p_path, "matrix JSON")->required();
    build_v_cmd->add_option("--Q", q_path, "matrix JSON")->required();
    build_v_cmd->callback([&] {
        action = [&] {
            Matrix p = matrix_from_json(read_json_file(p_path), opt.field_spec());
            Matrix q = matrix_from_json(read_json_file(q_path), opt.field_spec());
            emit(to_json(build_v(p, q)), opt.out);
        };
    });

    auto* build_pinch_cmd = build->add_subcommand("pinch", "M -> alpha(M X) through a subspace");
    add_common(build_pinch_cmd, opt);
    build_pinch_cmd->add_option("--subspace", sub_path, "subspace JSON")->required();
    build_pinch_cmd->add_option("--A", a_path, "coordinate matrix JSON")->required();
    build_pinch_cmd->add_option("--X", x_path, "column vector JSON")->required();
    build_pinch_cmd->add_flag("--twisted", twisted, "use M^t X instead of M X");
    build_pinch_cmd->callback([&] {
        action = [&] {
            MatrixSubspace v = subspace_from_json(read_json_file(sub_path));
            Matrix a = matrix_from_json(read_json_file(a_path), v.field());
            Matrix x = matrix_from_json(read_json_file(x_path), v.field());
            emit(to_json(build_pinch(v, a, x, twisted)), opt.out);
        };
    });

    // ---- classify / preserves -------------------------------------------
    std::string endo_path;
    auto* classify_cmd = app.add_subcommand("classify", "classify a GL-preserver");
    add_common(classify_cmd, opt);
    classify_cmd->add_option("--endo", endo_path, "endomorphism JSON")->required();
    classify_cmd->callback([&] {
        action = [&] {
            MatEndo f = endo_from_json(read_json_file(endo_path), opt.field_spec());
            PreserverClassification c = classify(f, opt.budget, opt.samples, opt.seed);
            emit(to_json(c), opt.out);
            if (c.tag == PreserverClassification::Tag::NotPreserver) exit_code = 1;
        };
    });

    auto* preserves_cmd = app.add_subcommand("preserves", "test GL preservation");
    add_common(preserves_cmd, opt);
    preserves_cmd->add_option("--endo", endo_path, "endomorphism JSON")->required();
    preserves_cmd->callback([&] {
        action = [&] {
            MatEndo f = endo_from_json(read_json_file(endo_path), opt.field_spec());
            PreservationVerdict v = preserves_GL(f, opt.budget, opt.samples, opt.seed);
            emit(to_json(v), opt.out);
            if (v.tag == PreservationVerdict::Tag::Refuted) exit_code = 1;
        };
    });

    // ---- subspace ---------------------------------------------------------
    auto* subspace = app.add_subcommand("subspace", "subspace constructions and tests");
    subspace->require_subcommand(1);
    std::string in_path;

    auto* mkld = subspace->add_subcommand("make-ld", "matrices killing X");
    add_common(mkld, opt);
    mkld->add_option("--X", x_path, "column vector JSON")->required();
    mkld->callback([&] {
        action = [&] {
            Matrix x = matrix_from_json(read_json_file(x_path), opt.field_spec());
            emit(to_json(make_LD(x)), opt.out);
        };
    });

    auto* mklh = subspace->add_subcommand("make-lh", "matrices with image inside Y-perp");
    add_common(mklh, opt);
    mklh->add_option("--Y", x_path, "normal vector JSON")->required();
    mklh->callback([&] {
        action = [&] {
            Matrix y = matrix_from_json(read_json_file(x_path), opt.field_spec());
            emit(to_json(make_LH(y)), opt.out);
        };
    });

    auto* sclassify = subspace->add_subcommand("classify", "kernel-type or image-type");
    add_common(sclassify, opt);
    sclassify->add_option("--in", in_path, "subspace JSON")->required();
    sclassify->callback([&] {
        action = [&] {
            MatrixSubspace v = subspace_from_json(read_json_file(in_path));
            emit(to_json(classify_maximal_singular(v)), opt.out);
        };
    });

    auto* ssing = subspace->add_subcommand("is-singular", "does the subspace avoid GL entirely");
    add_common(ssing, opt);
    ssing->add_option("--in", in_path, "subspace JSON")->required();
    ssing->callback([&] {
        action = [&] {
            MatrixSubspace v = subspace_from_json(read_json_file(in_path));
            emit(to_json(is_singular_subspace(v, opt.budget)), opt.out);
        };
    });

    auto* snonsing = subspace->add_subcommand("is-nonsingular", "full non-singularity verdict");
    add_common(snonsing, opt);
    snonsing->add_option("--in", in_path, "subspace JSON")->required();
    snonsing->callback([&] {
        action = [&] {
            MatrixSubspace v = subspace_from_json(read_json_file(in_path));
            emit(to_json(is_full_nonsingular(v, opt.budget, opt.samples, opt.seed)), opt.out);
        };
    });

    // ---- algebra ----------------------------------------------------------
    auto* algebra = app.add_subcommand("algebra", "division algebras and the bridge");
    algebra->require_subcommand(1);
    std::string preset_name, poly_arg;
    bool force_bridge = false;

    auto* apreset = algebra->add_subcommand("preset", "certified preset algebras");
    add_common(apreset, opt);
    apreset->add_option("--name", preset_name,
                        "companion | gaussian_pair | hamilton_quaternions | octonions")
        ->required();
    apreset->add_option("--poly", poly_arg, "companion polynomial, ascending coefficients");
    apreset->callback([&] {
        action = [&] {
            std::optional<Polynomial> poly;
            if (!poly_arg.empty()) poly = parse_poly_arg(opt.field_spec(), poly_arg);
            emit(to_json(preset(preset_name, opt.field_spec(), poly)), opt.out);
        };
    });

    auto* afrom = algebra->add_subcommand("from-subspace", "structure constants from a basis");
    add_common(afrom, opt);
    afrom->add_option("--in", in_path, "subspace JSON")->required();
    afrom->callback([&] {
        action = [&] {
            emit(to_json(from_subspace(subspace_from_json(read_json_file(in_path)))), opt.out);
        };
    });

    auto* ato = algebra->add_subcommand("to-subspace", "left-multiplication span");
    add_common(ato, opt);
    ato->add_option("--in", in_path, "algebra JSON")->required();
    ato->add_flag("--force", force_bridge, "bridge even without a division certificate");
    ato->callback([&] {
        action = [&] {
            emit(to_json(to_subspace(algebra_from_json(read_json_file(in_path)), force_bridge)),
                 opt.out);
        };
    });

    auto* adiv = algebra->add_subcommand("is-division", "division verdict with certificate");
    add_common(adiv, opt);
    adiv->add_option("--in", in_path, "algebra JSON")->required();
    adiv->callback([&] {
        action = [&] {
            DivisionVerdict v =
                is_division(algebra_from_json(read_json_file(in_path)), opt.budget, opt.samples, opt.seed);
            emit(to_json(v), opt.out);
            if (v.tag == DivisionVerdict::Tag::NotDivision) exit_code = 1;
        };
    });

    // ---- enumerate --------------------------------------------------------
    auto* enumerate = app.add_subcommand("enumerate", "scan every endomorphism of M_n(F_p)");
    add_common(enumerate, opt);
    std::string engine_name = "auto";
    std::uint64_t resume_from = 0, max_maps = 0;
    bool allow_long = false;
    enumerate->add_option("--engine", engine_name, "auto | packed | reference");
    enumerate->add_flag("--allow-long", allow_long, "override gate for campaigns above 2^20 maps");
    enumerate->add_option("--resume", resume_from, "odometer cursor to resume from");
    enumerate->add_option("--max-maps", max_maps, "scan at most this many maps (0 = all)");
    enumerate->callback([&] {
        action = [&] {
            CampaignConfig cfg;
            cfg.field = opt.field_spec();
            cfg.n = opt.n;
            cfg.budget = opt.budget;
            cfg.samples = opt.samples;
            cfg.jobs = opt.jobs;
            cfg.seed = opt.seed;
            cfg.allow_long = allow_long;
            cfg.resume_from = resume_from;
            cfg.max_maps = max_maps;
            if (engine_name == "packed") cfg.engine = CampaignConfig::Engine::Packed;
            else if (engine_name == "reference") cfg.engine = CampaignConfig::Engine::Reference;
            else if (engine_name != "auto") throw BadInput("unknown engine: " + engine_name);
            EnumerationReport rep = enumerate_preservers(cfg);
            emit(to_json(rep), opt.out);
            if (!rep.anomalies.empty() || !rep.complete) exit_code = 1;
        };
    });

    // ---- verify -----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "theorem-level audits");
    verify->require_subcommand(1);
    bool allow_long_verify = false;

    auto* vt1 = verify->add_subcommand("theorem1", "f(GL)=GL and f^{-1}(GL)=GL sets");
    add_common(vt1, opt);
    vt1->add_flag("--allow-long", allow_long_verify, "full scan above 2^20 maps");
    vt1->callback([&] {
        action = [&] {
            CampaignConfig cfg;
            cfg.field = opt.field_spec();
            cfg.n = opt.n;
            cfg.budget = opt.budget;
            cfg.samples = opt.samples;
            cfg.jobs = opt.jobs;
            cfg.seed = opt.seed;
            cfg.allow_long = allow_long_verify;
            Theorem1Report rep = verify_theorem1(cfg);
            emit(to_json(rep), opt.out);
            if (!rep.anomalies.empty()) exit_code = 1;
        };
    });

    auto* vdieu = verify->add_subcommand("dieudonne", "singular subspace lattice audit");
    add_common(vdieu, opt);
    vdieu->callback([&] {
        action = [&] {
            DieudonneReport rep =
                dieudonne_audit(opt.field_spec(), opt.n, opt.budget, opt.samples, opt.seed);
            emit(to_json(rep), opt.out);
            if (!rep.anomalies.empty()) exit_code = 1;
        };
    });

    auto* vspan = verify->add_subcommand("span", "GL spans the matrix space");
    add_common(vspan, opt);
    vspan->callback([&] {
        action = [&] {
            std::vector<std::pair<FieldSpec, int>> cases;
            if (vspan->count("--field") > 0 || vspan->count("--n") > 0) {
                cases.emplace_back(opt.field_spec(), opt.n);
            } else {
                for (std::uint32_t q : {2u, 3u})
                    for (int n : {2, 3}) cases.emplace_back(FieldSpec::gf(q), n);
            }
            SpanAuditReport rep = verify_span(cases, opt.budget);
            emit(to_json(rep), opt.out);
            if (!rep.all_ok) exit_code = 1;
        };
    });

    auto* vonto = verify->add_subcommand("onto", "M -> f(M)X is onto for all preservers");
    add_common(vonto, opt);
    vonto->callback([&] {
        action = [&] {
            CampaignConfig cfg;
            cfg.field = opt.field_spec();
            cfg.n = opt.n;
            cfg.budget = opt.budget;
            cfg.samples = opt.samples;
            cfg.seed = opt.seed;
            OntoAuditReport rep = verify_onto(cfg);
            emit(to_json(rep), opt.out);
            if (!rep.all_onto) exit_code = 1;
        };
    });

    // ---- report -----------------------------------------------------------
    auto* report = app.add_subcommand("report", "report utilities");
    report->require_subcommand(1);
    auto* render = report->add_subcommand("render", "human-readable summary of a report JSON");
    add_common(render, opt);
    render->add_option("--in", in_path, "report JSON")->required();
    render->callback([&] {
        action = [&] { emit_text(render_report(read_json_file(in_path)), opt.out); };
    });

    // ---- parse and dispatch ------------------------------------------------
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (json_errors) {
            Json j{{"error", {{"type", "UsageError"}, {"message", e.what()}}}};
            std::cout << j.dump(2) << "\n";
            return e.get_exit_code() == 0 ? 0 : 2;
        }
        return app.exit(e);
    }
    try {
        if (action) action();
    } catch (const Error& e) {
        if (json_errors) {
            Json j{{"error", {{"type", e.type()}, {"message", e.what()}}}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return 1;
    } catch (const std::exception& e) {
        if (json_errors) {
            Json j{{"error", {{"type", "InternalError"}, {"message", e.what()}}}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << "internal error: " << e.what() << "\n";
        }
        return 1;
    }
    return exit_code;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace glstab::cli
