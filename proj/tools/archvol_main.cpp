#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "archvol/copula.hpp"
#include "archvol/cpower.hpp"
#include "archvol/errors.hpp"
#include "archvol/generator.hpp"
#include "archvol/io.hpp"
#include "archvol/margins.hpp"
#include "archvol/verify.hpp"
#include "archvol/volume.hpp"

namespace {

using namespace archvol;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

std::uint64_t default_n_max() {
    if (const char* env = std::getenv("ARCHVOL_NMAX")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || parsed == 0)
            throw std::invalid_argument(
                "ARCHVOL_NMAX must be a positive integer");
        return parsed;
    }
    return kDefaultNMax;
}

struct CommandArgs {
    std::string generator_spec;
    std::string format = "json";
    std::uint64_t seed = 0;

    std::string point_json;
    std::string box_json;
    std::string boxes_json;
    double tol = 1e-12;
    std::string u_cuts_json;
    std::string v_cuts_json;
    double u = 0.0;
    double v = 0.0;
    std::uint64_t n = 1;
    bool trace = false;
    double epsilon = 1e-9;
    std::optional<std::uint64_t> n_max;
    std::vector<std::string> margin_files;
    std::size_t cert_boxes = 10000;
    std::string table_path;
    // verify knobs
    std::string families = "clayton,gumbel,frank,independence";
    std::string theta_grid_json;
    std::size_t u_grid = 99;
    std::size_t boxes_per_config = 10000;
    std::size_t partitions_per_config = 20;
    std::string inject_fault = "none";
};

Generator parse_generator(const CommandArgs& args) {
    if (args.generator_spec.empty())
        throw std::invalid_argument(
            "--generator is required, e.g. '{\"family\":\"clayton\","
            "\"theta\":1.0}'");
    return generator_from_json(args.generator_spec);
}

int run_eval(const CommandArgs& args) {
    const Generator g = parse_generator(args);
    const std::vector<double> point = point_from_json(args.point_json);
    std::cout << num17(cdf(g, point)) << "\n";
    return kExitOk;
}

int run_volume(const CommandArgs& args) {
    const Generator g = parse_generator(args);
    if (!args.boxes_json.empty()) {
        // d-increasing check over a list of boxes; violations are emitted
        // as JSON records and flip the exit status.
        const std::vector<Box> boxes = boxes_from_json(args.boxes_json);
        const auto violations = d_increasing_check(g, boxes, args.tol);
        for (const auto& v : violations)
            std::cout << violation_to_json(v) << "\n";
        std::cout << "checked " << boxes.size() << " boxes, "
                  << violations.size() << " violations\n";
        return violations.empty() ? kExitOk : kExitVerification;
    }
    if (args.box_json.empty())
        throw std::invalid_argument("volume requires --box or --boxes");
    std::cout << num17(copula_volume(g, box_from_json(args.box_json)))
              << "\n";
    return kExitOk;
}

int run_partition(const CommandArgs& args) {
    const Generator g = parse_generator(args);
    const Partition2D part(cuts_from_json(args.u_cuts_json),
                           cuts_from_json(args.v_cuts_json));
    std::cout << num17(partition_volume_sum(g, part)) << "\n";
    return kExitOk;
}

int run_power(const CommandArgs& args) {
    const Generator g = parse_generator(args);
    if (args.trace) {
        const CPowerTrace t = cpower_trace(
            g, args.u, args.epsilon, args.n_max.value_or(default_n_max()));
        std::cout << (args.format == "csv" ? trace_to_csv(t)
                                           : trace_to_json(t) + "\n");
        return kExitOk;
    }
    std::cout << num17(c_power(g, args.u, args.n)) << "\n";
    return kExitOk;
}

int run_witness(const CommandArgs& args) {
    const Generator g = parse_generator(args);
    const AxiomWitness w = axiom_witness(
        g, args.u, args.v, args.n_max.value_or(default_n_max()));
    std::cout << (args.format == "csv" ? witness_to_csv(w)
                                       : witness_to_json(w) + "\n");
    return kExitOk;
}

int run_margins(const CommandArgs& args) {
    const Generator g = parse_generator(args);
    if (args.margin_files.size() < 2)
        throw std::invalid_argument(
            "margins requires at least two --margin files");
    std::vector<StepDistribution> margins;
    margins.reserve(args.margin_files.size());
    for (const auto& path : args.margin_files)
        margins.push_back(step_from_file(path));

    const JointGrid grid = pmf_table(g, std::move(margins));
    const CertReport cert =
        certify_df_axioms(grid, args.cert_boxes, args.seed);

    if (args.table_path.empty()) {
        write_pmf_csv(std::cout, grid);
    } else {
        std::ofstream out(args.table_path);
        if (!out)
            throw std::invalid_argument("cannot write table file " +
                                        args.table_path);
        write_pmf_csv(out, grid);
    }
    std::cout << pmf_summary_json(grid, cert) << "\n";
    if (!cert.pass()) {
        for (const auto& v : cert.counterexamples)
            std::cout << violation_to_json(v) << "\n";
        std::cerr << "certification failed: " << cert.detail << "\n";
        return kExitVerification;
    }
    return kExitOk;
}

int run_verify(const CommandArgs& args) {
    verify::Options opt;
    opt.seed = args.seed;
    opt.u_grid = args.u_grid;
    opt.boxes_per_config = args.boxes_per_config;
    opt.partitions_per_config = args.partitions_per_config;
    if (args.inject_fault == "phi-at-one")
        opt.inject_phi_at_one_fault = true;
    else if (args.inject_fault != "none")
        throw std::invalid_argument(
            "--inject-fault must be none or phi-at-one");

    std::vector<Generator> gens;
    const auto grid = verify::default_generator_grid();
    for (const Generator& g : grid) {
        const std::string name(family_name(g.family()));
        if (args.families.find(name) != std::string::npos)
            gens.push_back(g);
    }
    if (gens.empty())
        throw std::invalid_argument("no known family in --families");

    const verify::Report report = verify::run_all(opt, gens);
    verify::print_report(std::cout, report);
    return report.pass() ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "archvol: Archimedean copula numerics - generator inverses, "
        "H-volumes, C-power iteration, axiom witnesses, discrete margins"};
    app.require_subcommand(1);

    CommandArgs args;

    auto add_common = [&](CLI::App* cmd, bool needs_generator = true) {
        if (needs_generator)
            cmd->add_option("--generator", args.generator_spec,
                            "generator spec JSON, e.g. "
                            "'{\"family\":\"clayton\",\"theta\":1.0}'");
        cmd->add_option("--format", args.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", args.seed,
                        "seed for any randomized sampling");
    };

    auto* eval = app.add_subcommand("eval", "evaluate C at a point");
    add_common(eval);
    eval->add_option("--point", args.point_json,
                     "JSON array of coordinates, e.g. '[0.5,0.5]'")
        ->required();

    auto* volume =
        app.add_subcommand("volume", "H-volume of a box under C");
    add_common(volume);
    volume->add_option("--box", args.box_json,
                       "JSON [[lower...],[upper...]]");
    volume->add_option("--boxes", args.boxes_json,
                       "JSON list of boxes for a d-increasing check");
    volume->add_option("--tol", args.tol, "violation tolerance");

    auto* partition = app.add_subcommand(
        "partition", "sum of cell volumes over a grounded partition");
    add_common(partition);
    partition->add_option("--u-cuts", args.u_cuts_json, "JSON array")
        ->required();
    partition->add_option("--v-cuts", args.v_cuts_json, "JSON array")
        ->required();

    auto* power =
        app.add_subcommand("power", "C-power iterate f_n(u) or full trace");
    add_common(power);
    power->add_option("--u", args.u, "base point u")->required();
    power->add_option("--n", args.n, "iterate index n >= 1");
    power->add_flag("--trace", args.trace, "emit the convergence trace");
    power->add_option("--epsilon", args.epsilon,
                      "stopping threshold for --trace");
    power->add_option("--n-max", args.n_max, "iteration budget");

    auto* witness = app.add_subcommand(
        "witness", "minimal N with f_N(u) < v (Archimedean axiom)");
    add_common(witness);
    witness->add_option("--u", args.u, "u in (0,1)")->required();
    witness->add_option("--v", args.v, "v in (0,1)")->required();
    witness->add_option("--n-max", args.n_max, "iteration budget");

    auto* margins = app.add_subcommand(
        "margins", "joint pmf table from discrete margins and a copula");
    add_common(margins);
    margins
        ->add_option("--margin", args.margin_files,
                     "margin file, CSV (x,F) or JSON {\"jumps\":[[x,F],...]}"
                     " (repeat per axis)")
        ->required();
    margins->add_option("--boxes", args.cert_boxes,
                        "random boxes for d.f. axiom certification");
    margins->add_option("--table", args.table_path,
                        "write the cell CSV here instead of stdout");

    auto* verify_cmd = app.add_subcommand(
        "verify", "run every module's invariant suite");
    add_common(verify_cmd, false);
    verify_cmd->add_option("--families", args.families,
                           "comma list of families to include");
    verify_cmd->add_option("--u-grid", args.u_grid,
                           "interior grid points per axis");
    verify_cmd->add_option("--boxes", args.boxes_per_config,
                           "random boxes per generator config");
    verify_cmd->add_option("--partitions", args.partitions_per_config,
                           "random partitions per generator config");
    verify_cmd->add_option("--inject-fault", args.inject_fault,
                           "plant a known defect: none|phi-at-one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return run_eval(args);
        if (volume->parsed()) return run_volume(args);
        if (partition->parsed()) return run_partition(args);
        if (power->parsed()) return run_power(args);
        if (witness->parsed()) return run_witness(args);
        if (margins->parsed()) return run_margins(args);
        if (verify_cmd->parsed()) return run_verify(args);
        std::cerr << "no command selected\n";
        return kExitUsage;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const idempotent_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const exhaustion_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
