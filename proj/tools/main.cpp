#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli_config.hpp"
#include "conesta/error.hpp"

namespace {

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("conesta");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    const char* env = std::getenv("CONESTA_LOG");
    const std::string level = env ? env : "info";
    if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (level == "error") {
        spdlog::set_level(spdlog::level::err);
    } else {
        spdlog::set_level(spdlog::level::info);
    }
}

} // namespace

int main(int argc, char** argv)
{
    using namespace conesta::cli;
    setup_logging();

    CLI::App app{"Structured-sparsity logistic regression (l1 + l2 + 3D TV) with continuation"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset with planted regions");
    simulate->add_option("--spec", sim.spec, "Synthetic spec (JSON)")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out-prefix", sim.out_prefix, "Writes <prefix>.data, .mask and .truth")->required();
    simulate->add_option("--mask", sim.mask, "Optional mask file restricting the voxels");

    SplitArgs spl;
    auto* split = app.add_subcommand("split", "Stratified train/test split of a dataset");
    split->add_option("--data", spl.data)->required();
    split->add_option("--train-fraction", spl.train_fraction)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    split->add_option("--seed", spl.seed)->capture_default_str();
    split->add_option("--out-prefix", spl.out_prefix, "Writes <prefix>.train.data and <prefix>.test.data")->required();

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "Fit a penalized logistic regression");
    fit->add_option("--data", fa.data)->required();
    fit->add_option("--mask", fa.mask)->required();
    fit->add_option("--l2", fa.l2, "Ridge weight")->capture_default_str()->check(CLI::NonNegativeNumber);
    fit->add_option("--l1", fa.l1, "Lasso weight")->capture_default_str()->check(CLI::NonNegativeNumber);
    fit->add_option("--tv", fa.tv, "Total-variation weight")->capture_default_str()->check(CLI::NonNegativeNumber);
    fit->add_option("--eps", fa.eps, "Target precision")->capture_default_str()->check(CLI::PositiveNumber);
    fit->add_option("--seed", fa.seed)->capture_default_str();
    fit->add_option("--init", fa.init)->capture_default_str()->check(CLI::IsMember({"zeros", "random_unit"}));
    fit->add_flag("--standardize", fa.standardize, "Standardize columns before fitting");
    fit->add_option("--max-iter", fa.max_iter, "Inner FISTA iteration cap per run")->capture_default_str()->check(CLI::PositiveNumber);
    fit->add_option("--tol", fa.tol, "Inner FISTA tolerance floor")->capture_default_str()->check(CLI::PositiveNumber);
    fit->add_option("--inner-tol-scale", fa.inner_tol_scale, "Run i stops at max(tol, scale*eps_i)")->capture_default_str()->check(CLI::PositiveNumber);
    fit->add_option("--out", fa.out)->required();

    PredictArgs pa;
    auto* predict = app.add_subcommand("predict", "Write per-sample probabilities and labels");
    predict->add_option("--model", pa.model)->required();
    predict->add_option("--data", pa.data)->required();
    predict->add_option("--out", pa.out)->required();

    EvaluateArgs ea;
    auto* evaluate = app.add_subcommand("evaluate", "Sensitivity, specificity, BCR and McNemar's test");
    evaluate->add_option("--pred-a", ea.pred_a)->required();
    evaluate->add_option("--pred-b", ea.pred_b);
    evaluate->add_option("--truth", ea.truth, "Dataset file holding the true labels")->required();
    evaluate->add_option("--model", ea.model, "Model whose support is compared to --ground-truth");
    evaluate->add_option("--ground-truth", ea.ground_truth);
    evaluate->add_option("--support-threshold", ea.support_threshold)->capture_default_str()->check(CLI::NonNegativeNumber);
    evaluate->add_option("--out", ea.out, "Write JSON here instead of stdout");

    EvaluateArgs ca;
    auto* compare = app.add_subcommand("compare", "McNemar comparison of two prediction files");
    compare->add_option("--pred-a", ca.pred_a)->required();
    compare->add_option("--pred-b", ca.pred_b)->required();
    compare->add_option("--truth", ca.truth)->required();
    compare->add_option("--out", ca.out);

    SlicesArgs sa;
    auto* slices = app.add_subcommand("slices", "Export weight-map slices as CSV");
    slices->add_option("--model", sa.model)->required();
    slices->add_option("--mask", sa.mask)->required();
    slices->add_option("--axis", sa.axis)->capture_default_str()->check(CLI::IsMember({"x", "y", "z"}));
    slices->add_option("--index", sa.indices, "Slice index (repeatable)")->required();
    slices->add_option("--out-prefix", sa.out_prefix, "Writes <prefix>_<axis><index>.csv")->required();

    CheckArgs ka;
    auto* check = app.add_subcommand("check", "Run self-checks against independent oracles");
    check->add_option("--suite", ka.suite)->required()->check(CLI::IsMember({"gradients", "bounds", "oracles"}));
    check->add_option("--seed", ka.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*split) return cmd_split(spl);
        if (*fit) return cmd_fit(fa);
        if (*predict) return cmd_predict(pa);
        if (*evaluate) return cmd_evaluate(ea);
        if (*compare) return cmd_evaluate(ca);
        if (*slices) return cmd_slices(sa);
        if (*check) return cmd_check(ka);
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
