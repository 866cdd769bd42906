#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conesta::cli {

// Exit codes are a stable contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct Defaults {
    static constexpr double target_eps = 1e-6;
    static constexpr std::uint64_t seed = 42;
    static constexpr const char* init = "random_unit";
    static constexpr std::size_t max_iter = 10000;
    static constexpr double inner_tol = 1e-8;
    static constexpr double inner_tol_scale = 1.0;
    static constexpr double train_fraction = 0.5;
    static constexpr double support_threshold = 0.0;
};

struct SimulateArgs {
    std::string spec;
    std::string out_prefix;
    std::string mask;
};

struct SplitArgs {
    std::string data;
    double train_fraction = Defaults::train_fraction;
    std::uint64_t seed = Defaults::seed;
    std::string out_prefix;
};

struct FitArgs {
    std::string data;
    std::string mask;
    double l2 = 0.0;
    double l1 = 0.0;
    double tv = 0.0;
    double eps = Defaults::target_eps;
    std::uint64_t seed = Defaults::seed;
    std::string init = Defaults::init;
    bool standardize = false;
    std::size_t max_iter = Defaults::max_iter;
    double tol = Defaults::inner_tol;
    double inner_tol_scale = Defaults::inner_tol_scale;
    std::string out;
};

struct PredictArgs {
    std::string model;
    std::string data;
    std::string out;
};

struct EvaluateArgs {
    std::string pred_a;
    std::string pred_b;
    std::string truth;
    std::string model;
    std::string ground_truth;
    double support_threshold = Defaults::support_threshold;
    std::string out;
};

struct SlicesArgs {
    std::string model;
    std::string mask;
    std::string axis = "z";
    std::vector<std::size_t> indices;
    std::string out_prefix;
};

struct CheckArgs {
    std::string suite;
    std::uint64_t seed = Defaults::seed;
};

int cmd_simulate(const SimulateArgs& args);
int cmd_split(const SplitArgs& args);
int cmd_fit(const FitArgs& args);
int cmd_predict(const PredictArgs& args);
int cmd_evaluate(const EvaluateArgs& args);
int cmd_slices(const SlicesArgs& args);
int cmd_check(const CheckArgs& args);

} // namespace conesta::cli
