#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "cli_config.hpp"
#include "conesta/continuation.hpp"
#include "conesta/eval.hpp"
#include "conesta/io.hpp"
#include "conesta/synthetic.hpp"

namespace conesta::cli {

namespace {

using nlohmann::json;

SyntheticSpec parse_synthetic_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open spec " + path);
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw InvalidArgument("spec is not a JSON object");
    try {
        SyntheticSpec spec;
        const auto dims = j.at("dims").get<std::vector<std::size_t>>();
        if (dims.size() != 3) throw InvalidArgument("spec 'dims' needs three entries");
        spec.dims = {dims[0], dims[1], dims[2]};
        spec.n_per_class = j.at("n_per_class").get<std::size_t>();
        spec.noise_sigma = j.value("noise_sigma", 1.0);
        spec.smoothness = j.value("smoothness", std::size_t{0});
        spec.seed = j.value("seed", std::uint64_t{0});
        for (const json& r : j.value("regions", json::array())) {
            const auto c = r.at("center").get<std::vector<std::size_t>>();
            if (c.size() != 3) throw InvalidArgument("region 'center' needs three entries");
            spec.regions.push_back({{c[0], c[1], c[2]}, r.at("radius").get<double>(),
                                    r.at("effect").get<double>()});
        }
        return spec;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("invalid spec: ") + e.what());
    }
}

std::string to_string_17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Predictions {
    std::vector<double> probability;
    std::vector<int> label;
};

Predictions read_predictions(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open predictions " + path);
    std::string line;
    if (!std::getline(in, line) || line != "sample,probability,label") {
        throw InvalidArgument(path + ": missing header 'sample,probability,label'");
    }
    Predictions out;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string sample, prob, label;
        if (!std::getline(fields, sample, ',') || !std::getline(fields, prob, ',') ||
            !std::getline(fields, label) || label.find(',') != std::string::npos) {
            throw InvalidArgument(path + ": malformed row " + std::to_string(row + 1));
        }
        try {
            std::size_t used = 0;
            const auto idx = std::stoul(sample, &used);
            if (used != sample.size() || idx != row) throw std::invalid_argument("index");
            const double p = std::stod(prob, &used);
            if (used != prob.size()) throw std::invalid_argument("probability");
            if (label != "0" && label != "1") throw std::invalid_argument("label");
            out.probability.push_back(p);
            out.label.push_back(label == "1" ? 1 : 0);
        } catch (const std::exception&) {
            throw InvalidArgument(path + ": malformed row " + std::to_string(row + 1));
        }
        ++row;
    }
    return out;
}

json metrics_json(const EvalMetrics& m)
{
    return {{"sensitivity", m.sensitivity},
            {"specificity", m.specificity},
            {"bcr", m.bcr},
            {"counts", {{"tp", m.counts.tp}, {"tn", m.counts.tn}, {"fp", m.counts.fp}, {"fn", m.counts.fn}}}};
}

void emit_json(const json& j, const std::string& out)
{
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw InvalidArgument("cannot write " + out);
    f << j.dump(2) << '\n';
}

} // namespace

int cmd_simulate(const SimulateArgs& args)
{
    const SyntheticSpec spec = parse_synthetic_spec(args.spec);
    std::optional<MaskedVolume> mask;
    if (!args.mask.empty()) mask = read_volume(args.mask);
    const SyntheticData sd = generate(spec, std::move(mask));
    write_dataset(args.out_prefix + ".data", sd.data);
    write_volume(args.out_prefix + ".mask", sd.volume);
    write_truth(args.out_prefix + ".truth", sd.truth);
    spdlog::info("wrote {} samples x {} voxels ({} in true support) to {}.*", sd.data.samples(),
                 sd.data.features(), sd.truth.support_size(), args.out_prefix);
    return kExitOk;
}

int cmd_split(const SplitArgs& args)
{
    const Dataset data = read_dataset(args.data);
    const auto [train, test] = split(data, args.train_fraction, args.seed);
    write_dataset(args.out_prefix + ".train.data", train);
    write_dataset(args.out_prefix + ".test.data", test);
    spdlog::info("train {} / test {} samples", train.samples(), test.samples());
    return kExitOk;
}

int cmd_fit(const FitArgs& args)
{
    Dataset data = read_dataset(args.data);
    const MaskedVolume vol = read_volume(args.mask);
    if (data.features() != vol.size()) {
        throw InvalidArgument("dataset has " + std::to_string(data.features()) +
                              " features but the mask has " + std::to_string(vol.size()) + " voxels");
    }
    ModelFile model;
    model.weights = {args.l2, args.l1, args.tv};
    model.weights.validate();
    model.target_eps = args.eps;
    model.seed = args.seed;
    model.init = parse_init_mode(args.init);
    if (args.standardize) {
        model.standardization = Standardization::fit(data.x);
        data.x = model.standardization->apply(data.x);
    }

    const GradientOperator op(vol);
    FistaConfig inner;
    inner.max_iter = args.max_iter;
    inner.tol = args.tol;
    spdlog::debug("|A|_2 = {}, p = {}, n = {}", op.spectral_norm(), vol.size(), data.samples());

    model.fit = conesta_fit(data, op, model.weights, init_beta(vol.size(), model.init, args.seed),
                            args.eps, inner, args.seed, args.inner_tol_scale);
    for (std::size_t i = 0; i < model.fit.runs.size(); ++i) {
        const auto& r = model.fit.runs[i];
        spdlog::debug("run {}: eps={} mu={} iterations={} f={}", i + 1, r.eps, r.mu,
                      r.inner_iterations, r.objective_exact);
        if (!r.converged) spdlog::info("run {} stopped at the iteration cap", i + 1);
    }
    const auto nnz = (model.fit.beta.array() != 0.0).count();
    spdlog::info("fit done: {} runs, {} FISTA iterations, f = {}, {} nonzero of {}",
                 model.fit.runs.size(), model.fit.total_inner_iterations,
                 model.fit.runs.back().objective_exact, nnz, model.fit.beta.size());
    write_model(args.out, model);
    return kExitOk;
}

int cmd_predict(const PredictArgs& args)
{
    const ModelFile model = read_model(args.model);
    Dataset data = read_dataset(args.data);
    if (data.features() != static_cast<std::size_t>(model.fit.beta.size())) {
        throw InvalidArgument("model has p = " + std::to_string(model.fit.beta.size()) +
                              " but the data has " + std::to_string(data.features()) + " features");
    }
    if (model.standardization) data.x = model.standardization->apply(data.x);
    const Eigen::VectorXd proba = predict_proba(data.x, model.fit.beta);
    const auto labels = labels_from_probabilities(proba);

    std::ofstream out(args.out);
    if (!out) throw InvalidArgument("cannot write " + args.out);
    out << "sample,probability,label\n";
    for (Eigen::Index i = 0; i < proba.size(); ++i) {
        out << i << ',' << to_string_17(proba[i]) << ',' << labels[static_cast<std::size_t>(i)] << '\n';
    }
    return kExitOk;
}

int cmd_evaluate(const EvaluateArgs& args)
{
    const Dataset truth = read_dataset(args.truth);
    std::vector<int> y(truth.samples());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = truth.y[static_cast<Eigen::Index>(i)] == 1.0;

    const Predictions a = read_predictions(args.pred_a);
    if (a.label.size() != y.size()) {
        throw InvalidArgument("prediction file has " + std::to_string(a.label.size()) +
                              " rows, truth has " + std::to_string(y.size()));
    }
    json report;
    report["a"] = metrics_json(compute_metrics(y, a.label));

    if (!args.pred_b.empty()) {
        const Predictions b = read_predictions(args.pred_b);
        if (b.label.size() != y.size()) {
            throw InvalidArgument("second prediction file has " + std::to_string(b.label.size()) +
                                  " rows, truth has " + std::to_string(y.size()));
        }
        report["b"] = metrics_json(compute_metrics(y, b.label));
        const McNemarResult mc = mcnemar_test(y, a.label, b.label);
        report["mcnemar"] = {{"b", mc.b},
                             {"c", mc.c},
                             {"p_value", mc.p_value},
                             {"test_kind", std::string(to_string(mc.kind))}};
    }
    if (!args.model.empty() || !args.ground_truth.empty()) {
        if (args.model.empty() || args.ground_truth.empty()) {
            throw InvalidArgument("--model and --ground-truth must be given together");
        }
        const ModelFile model = read_model(args.model);
        const GroundTruth gt = read_truth(args.ground_truth);
        const SupportStats s = support_stats(model.fit.beta, gt, args.support_threshold);
        report["support"] = {{"dice", s.dice}, {"n_nonzero", s.n_nonzero},
                             {"threshold", args.support_threshold}};
    }
    emit_json(report, args.out);
    return kExitOk;
}

int cmd_slices(const SlicesArgs& args)
{
    const ModelFile model = read_model(args.model);
    const MaskedVolume vol = read_volume(args.mask);
    const Axis axis = parse_axis(args.axis);
    const auto csvs = export_weight_slices(model.fit.beta, vol, axis, args.indices);
    for (std::size_t k = 0; k < csvs.size(); ++k) {
        const std::string path = args.out_prefix + "_" + args.axis + std::to_string(args.indices[k]) + ".csv";
        std::ofstream out(path);
        if (!out) throw InvalidArgument("cannot write " + path);
        out << csvs[k];
    }
    return kExitOk;
}

} // namespace conesta::cli
