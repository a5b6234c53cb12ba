#include "oamix/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oamix/catalog.hpp"
#include "oamix/error.hpp"
#include "oamix/evaluate.hpp"
#include "oamix/fit.hpp"
#include "oamix/io.hpp"
#include "oamix/modelmat.hpp"

namespace oamix::cli {
namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelArgs {
    std::string model;
    bool pwo = false;
    CLI::Option* pwo_opt = nullptr;
    bool block = false;
    CLI::Option* block_opt = nullptr;
    std::string interactions = "none";
    std::string coding;

    void attach(CLI::App* app, bool with_coding, const std::string& default_coding) {
        app->add_option("--model,-m", model, "model family")
            ->required()
            ->check(CLI::IsMember(modelmat::family_short_names()));
        pwo_opt = app->add_flag("--pwo,!--no-pwo", pwo, "include ordering columns (default: when present)");
        block_opt = app->add_flag("--block,!--no-block", block, "include block column (default: two blocks)");
        app->add_option("--interactions", interactions,
                        "none | default | full | comma list like x1*z12 or 1:12")
            ->capture_default_str();
        coding = default_coding;
        if (with_coding)
            app->add_option("--coding", coding, "raw | coded component columns")
                ->check(CLI::IsMember({"raw", "coded"}))
                ->capture_default_str();
    }
};

ModelSpec make_spec(const ModelArgs& a, const BlockedDesign& d) {
    ModelSpec spec;
    spec.family = modelmat::family_from_name(a.model);
    spec.include_pwo = a.pwo_opt->count() > 0 ? a.pwo : d.has_pwo();
    spec.include_block = a.block_opt->count() > 0 ? a.block : d.n_blocks == 2;
    spec.interaction_terms = modelmat::parse_interactions(a.interactions, d.m);
    spec.coding = a.coding == "coded" ? Coding::Coded : Coding::Raw;
    return spec;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c == 0)
                out << std::left << std::setw(static_cast<int>(width[c])) << r[c];
            else
                out << "  " << std::right << std::setw(static_cast<int>(width[c])) << r[c];
        }
        out << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto w : width) total += w + 2;
    out << std::string(total - 2, '-') << '\n';
    for (const auto& r : rows) line(r);
}

std::uint64_t seed_from(const CLI::Option* opt, std::uint64_t value) {
    if (opt->count() > 0) return value;
    const char* env = std::getenv("OAMIX_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || env[0] == '-') throw UsageError("OAMIX_SEED is not an unsigned integer");
    return v;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        io::write_text_file(path, text);
}

ModelMatrix eval_point_matrix(const BlockedDesign& design, const ModelSpec& spec, const std::string& path) {
    const BlockedDesign pts = io::read_design_file(path);
    if (pts.m != design.m)
        throw Error(ErrorKind::DimensionMismatch, "evaluation points have " + std::to_string(pts.m) +
                                                      " components, design has " + std::to_string(design.m));
    const ModelSpec resolved = modelmat::resolve_coding(design, spec);
    ModelMatrix x;
    x.columns = modelmat::column_names(resolved, design.m);
    x.rows = pts.size();
    for (const Run& r : pts.runs) {
        const auto row = modelmat::model_row(r, pts.m, pts.kind, resolved);
        x.data.insert(x.data.end(), row.begin(), row.end());
    }
    return x;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blocked order-of-addition mixture designs: catalog, checks, evaluation, fitting", "oamix"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "expand all help");

    // catalog
    std::string cat_name, cat_out;
    double a_max = 1.0;
    bool cat_list = false;
    auto* cat = app.add_subcommand("catalog", "write a built-in design as CSV");
    cat->add_option("name", cat_name, "design name");
    cat->add_option("--a-max", a_max, "largest total amount (ca-projection)")->capture_default_str();
    cat->add_option("-o,--output", cat_out, "output CSV (default stdout)");
    cat->add_flag("--list", cat_list, "list design names");

    // expand
    std::string exp_in, exp_out;
    bool exp_no_vertex = false;
    auto* exp = app.add_subcommand("expand", "replicate each run over the orderings of its support");
    exp->add_option("-i,--input", exp_in)->required();
    exp->add_option("-o,--output", exp_out);
    exp->add_flag("--no-vertex-orders", exp_no_vertex, "drop single-component runs");

    // check-blocks
    std::string cb_in;
    double cb_tol = evaluate::BlockingTolerance{}.mixture;
    bool cb_json = false;
    ModelArgs cb_model;
    auto* cb = app.add_subcommand("check-blocks", "check the equal per-block sum conditions");
    cb->add_option("-i,--input", cb_in)->required();
    cb_model.attach(cb, false, "raw");
    cb->add_option("--tol", cb_tol, "mixture-term tolerance")->capture_default_str();
    cb->add_flag("--json", cb_json);

    // eval
    std::string ev_in, ev_points;
    bool ev_json = false;
    evaluate::PowerOptions ev_power;
    ModelArgs ev_model;
    auto* ev = app.add_subcommand("eval", "design criteria, prediction variance, SE, R^2, power");
    ev->add_option("-i,--input", ev_in)->required();
    ev_model.attach(ev, true, "coded");
    ev->add_option("--eval-points", ev_points, "CSV of points for prediction variance");
    ev->add_option("--alpha", ev_power.alpha)->capture_default_str();
    ev->add_option("--effect-sd", ev_power.effect_sd)->capture_default_str();
    ev->add_option("--sigma", ev_power.sigma)->capture_default_str();
    ev->add_flag("--json", ev_json);

    // fds
    std::string fds_in, fds_out;
    std::size_t fds_samples = 10000;
    std::uint64_t fds_seed = 0;
    unsigned fds_threads = 1;
    ModelArgs fds_model;
    auto* fds = app.add_subcommand("fds", "fraction of design space curve (CSV + SVG)");
    fds->add_option("-i,--input", fds_in)->required();
    fds_model.attach(fds, false, "raw");
    fds->add_option("--samples", fds_samples)->capture_default_str()->check(CLI::PositiveNumber);
    auto* seed_opt = fds->add_option("--seed", fds_seed, "random seed (default: OAMIX_SEED, else 0)");
    fds->add_option("--threads", fds_threads)->capture_default_str()->check(CLI::PositiveNumber);
    fds->add_option("-o,--output", fds_out, "output base path")->required();

    // power
    std::string pw_in;
    bool pw_json = false;
    evaluate::PowerOptions pw_power;
    ModelArgs pw_model;
    auto* pw = app.add_subcommand("power", "per-coefficient t-test power");
    pw->add_option("-i,--input", pw_in)->required();
    pw_model.attach(pw, true, "coded");
    pw->add_option("--alpha", pw_power.alpha)->capture_default_str();
    pw->add_option("--effect-sd", pw_power.effect_sd)->capture_default_str();
    pw->add_option("--sigma", pw_power.sigma)->capture_default_str();
    pw->add_flag("--json", pw_json);

    // fit
    std::string fit_in, fit_resp, fit_out;
    bool fit_json = false;
    ModelArgs fit_model;
    auto* ft = app.add_subcommand("fit", "ordinary least squares fit of a response");
    ft->add_option("-i,--input", fit_in)->required();
    fit_model.attach(ft, true, "raw");
    ft->add_option("--response", fit_resp, "CSV with a y column, one row per run")->required();
    ft->add_option("-o,--output", fit_out, "coefficient CSV");
    ft->add_flag("--json", fit_json);

    // validate
    std::string val_in;
    auto* val = app.add_subcommand("validate", "check a design file against the run invariants");
    val->add_option("-i,--input", val_in)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cat->parsed()) {
            if (cat_list || cat_name.empty()) {
                for (const auto& n : catalog::names()) out << n << '\n';
                return kExitOk;
            }
            emit(cat_out, io::write_design_csv(catalog::by_name(cat_name, a_max)), out);
        } else if (exp->parsed()) {
            catalog::ExpansionPolicy policy;
            if (exp_no_vertex) policy.vertex_orders = catalog::ExpansionPolicy::Vertex::None;
            emit(exp_out, io::write_design_csv(catalog::oofa_expand(io::read_design_file(exp_in), policy)), out);
        } else if (cb->parsed()) {
            const BlockedDesign d = io::read_design_file(cb_in);
            evaluate::BlockingTolerance tol;
            tol.mixture = cb_tol;
            ModelSpec spec = make_spec(cb_model, d);
            spec.include_block = false;
            const auto report = evaluate::check_orthogonal_blocking(d, spec, tol);
            if (cb_json) {
                out << io::to_json(report).dump(2) << '\n';
            } else {
                std::vector<std::vector<std::string>> rows;
                for (const auto& c : report.conditions) {
                    std::string sums;
                    for (double s : c.block_sums) sums += (sums.empty() ? "" : " / ") + io::format_number(s);
                    rows.push_back({c.term, c.family, sums, io::format_number(c.discrepancy),
                                    c.pass ? "ok" : "FAIL"});
                }
                print_table(out, {"term", "family", "block sums", "diff", ""}, rows);
                out << (report.pass ? "orthogonally blocked\n" : "NOT orthogonally blocked\n");
            }
            return report.pass ? kExitOk : kExitData;
        } else if (ev->parsed()) {
            const BlockedDesign d = io::read_design_file(ev_in);
            const ModelSpec spec = make_spec(ev_model, d);
            const ModelMatrix x = modelmat::build_model_matrix(d, spec);
            std::optional<ModelMatrix> pts;
            if (!ev_points.empty()) pts = eval_point_matrix(d, spec, ev_points);
            const auto report = evaluate::criteria_report(x, pts ? &*pts : nullptr, ev_power);
            std::optional<evaluate::BlockingReport> blocking;
            if (d.n_blocks >= 2) {
                ModelSpec bspec = spec;
                bspec.include_block = false;
                bspec.coding = Coding::Raw;
                blocking = evaluate::check_orthogonal_blocking(d, bspec);
            }
            if (ev_json) {
                auto j = io::to_json(report);
                j["model"] = ev_model.model;
                j["coding"] = ev_model.coding;
                j["blocking"] = blocking ? io::to_json(*blocking) : nlohmann::json(nullptr);
                out << j.dump(2) << '\n';
                return kExitOk;
            }
            out << "model        " << ev_model.model << " (" << ev_model.coding << ")\n"
                << "runs n       " << report.n << "\n"
                << "terms p      " << report.p << "\n"
                << "det(X'X)     " << io::format_number(report.det_xtx) << "\n"
                << "D criterion  " << io::format_number(report.d_criterion) << "\n"
                << "A criterion  " << io::format_number(report.a_criterion) << "\n"
                << "max PV       " << fixed(report.max_pv, 4) << " (point " << report.max_pv_index + 1 << ")\n"
                << "avg PV       " << fixed(report.avg_pv, 4) << "\n"
                << "G-efficiency " << fixed(report.g_efficiency, 1) << "%\n";
            if (blocking)
                out << "blocking     " << (blocking->pass ? "orthogonal" : "not orthogonal") << "\n";
            out << '\n';
            std::vector<std::vector<std::string>> rows;
            for (const auto& c : report.columns)
                rows.push_back({c.name, fixed(c.se, 3), c.r_squared ? fixed(*c.r_squared, 4) : "",
                                c.power ? fixed(100.0 * *c.power, 1) : ""});
            print_table(out, {"term", "SE", "R^2", "power %"}, rows);
            out << '\n';
            for (const auto& n : report.notes) out << "note: " << n << '\n';
        } else if (fds->parsed()) {
            const BlockedDesign d = io::read_design_file(fds_in);
            const ModelSpec spec = make_spec(fds_model, d);
            const std::uint64_t seed = seed_from(seed_opt, fds_seed);
            const auto curve = evaluate::fds_curve(d, spec, fds_samples, seed, fds_threads);
            io::write_fds_outputs(curve, fds_out);
            const auto& pts = curve.points;
            out << "samples " << curve.samples << ", seed " << seed << "\n"
                << "min PV    " << fixed(pts.front().variance, 4) << "\n"
                << "median PV " << fixed(pts[pts.size() / 2].variance, 4) << "\n"
                << "max PV    " << fixed(pts.back().variance, 4) << "\n"
                << "wrote " << fds_out << ".csv, " << fds_out << ".svg\n";
        } else if (pw->parsed()) {
            const BlockedDesign d = io::read_design_file(pw_in);
            const ModelMatrix x = modelmat::build_model_matrix(d, make_spec(pw_model, d));
            const auto rows = evaluate::power_table(x, pw_power);
            if (pw_json) {
                out << nlohmann::json{{"alpha", pw_power.alpha},
                                      {"effect_sd", pw_power.effect_sd},
                                      {"sigma", pw_power.sigma},
                                      {"df", x.rows - x.cols()},
                                      {"terms", io::to_json(rows)}}
                           .dump(2)
                    << '\n';
                return kExitOk;
            }
            std::vector<std::vector<std::string>> table;
            for (const auto& r : rows)
                table.push_back({r.name, fixed(r.se, 3), fixed(r.noncentrality, 3), fixed(100.0 * r.power, 1)});
            print_table(out, {"term", "SE", "ncp", "power %"}, table);
            out << "\ntwo-sided t-test, df = " << x.rows - x.cols() << ", alpha = " << pw_power.alpha
                << ", effect = " << pw_power.effect_sd << " sigma\n";
        } else if (ft->parsed()) {
            const BlockedDesign d = io::read_design_file(fit_in);
            const ModelMatrix x = modelmat::build_model_matrix(d, make_spec(fit_model, d));
            const auto y = io::parse_response_csv(io::read_text_file(fit_resp));
            if (y.size() != x.rows)
                throw Error(ErrorKind::DimensionMismatch, "response has " + std::to_string(y.size()) +
                                                              " values, design has " + std::to_string(x.rows) +
                                                              " runs");
            const auto result = fit::ols_fit(x, y);
            if (!fit_out.empty()) {
                std::ostringstream csv;
                csv << "term,estimate,se\n";
                char buf[128];
                for (const auto& c : result.coefficients) {
                    std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", c.estimate, c.se);
                    csv << c.name << buf;
                }
                io::write_text_file(fit_out, csv.str());
            }
            if (fit_json) {
                out << io::to_json(result).dump(2) << '\n';
                return kExitOk;
            }
            std::vector<std::vector<std::string>> rows;
            for (const auto& c : result.coefficients)
                rows.push_back({c.name, io::format_number(c.estimate), io::format_number(c.se)});
            print_table(out, {"term", "estimate", "SE"}, rows);
            out << "\nsigma_hat " << io::format_number(result.sigma_hat) << ", df " << result.df_residual
                << ", R^2 " << fixed(result.r_squared, 4) << (result.centered_r_squared ? "" : " (uncentered)")
                << '\n';
        } else if (val->parsed()) {
            const BlockedDesign d = io::read_design_file(val_in, false);
            const auto report = validate_design(d);
            for (const auto& v : report)
                out << (v.run ? "run " + std::to_string(*v.run + 1) : std::string("design")) << ": " << v.rule
                    << ": " << v.detail << '\n';
            out << d.size() << " runs, " << d.m << " components, " << d.n_blocks << " block(s), "
                << kind_name(d.kind) << (report.empty() ? ": valid\n" : ": INVALID\n");
            return report.empty() ? kExitOk : kExitData;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::SpecError:
        case ErrorKind::Unsupported:
        case ErrorKind::KindMismatch:
            return kExitUsage;
        case ErrorKind::SingularMatrix:
        case ErrorKind::InsufficientDF:
            return kExitNumerical;
        default:
            return kExitData;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace oamix::cli
