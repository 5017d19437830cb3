#pragma once

#include "pinch/config.hpp"
#include "pinch/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pinch {

enum class Scheme
{
  Swsp,
  Mwmp,
  PassZf,
  PassMrt,
  MimoZf,
  MimoMrt,
};

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);
std::vector<Scheme> all_schemes();

/// Independent stream seed for item `index` under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Runs fn(0..n-1) on up to `workers` threads (0 = hardware concurrency).
/// Callers write results by index, so the outcome is independent of workers.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

struct UserPair
{
  Vec3 bob;
  Vec3 willie;
};

/// Bob and Willie's nominal centre drawn uniformly over the configured region;
/// pairs closer than min_user_separation are redrawn. Draw i depends only on
/// (seed, i).
std::vector<UserPair> sample_user_pairs(const ExperimentConfig& cfg, int n, std::uint64_t seed);
std::vector<Scenario> sample_scenarios(const ExperimentConfig& cfg, int n, std::uint64_t seed);

struct TrialResult
{
  double rate = 0.0;
  double power = 0.0;
  bool covert = true; // post-hoc check at every Willie sample (dense disk for SWSP)
};

TrialResult run_scheme(Scheme scheme, const Scenario& sc, const ExperimentConfig& cfg, std::uint64_t trial_seed);

/// Polar grid over Willie's uncertainty disk: centre plus rings x spokes points.
std::vector<Vec3> dense_disk(const WillieUncertainty& wu, int rings, int spokes);

/// Willie's minimal error rate stays >= 1 - rho - 1e-9 at every point of a
/// dense disk grid around a single antenna at (x, 0, h) with power P.
bool swsp_covert(double x, double power, const Scenario& sc);

struct SweepRecord
{
  std::string scheme;
  std::string sweep_variable;
  double sweep_value = 0.0;
  long long trial = 0; // -1 marks a per-value mean over trials
  double covert_rate = 0.0;
  double p_opt = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::string_view kSweepVariables[] = {"target_error_rate", "power_budget", "uncertainty_radius"};

/// Copy of cfg with the swept variable set to value.
ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, std::string_view variable, double value);

/// Per-trial rows followed by per-(scheme, value) mean rows.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg, std::string_view variable,
                                   std::span<const double> values, std::span<const Scheme> schemes);

/// Mean rate per scheme over the configured Monte Carlo scenarios.
std::vector<SweepRecord> run_benchmark(const ExperimentConfig& cfg, std::span<const Scheme> schemes);

/// Fixed-scenario traces. SWSP: best rate so far per power step. MWMP: incumbent
/// fitness per PSO iteration for each of cfg.convergence_runs seeds, then the mean.
std::vector<SweepRecord> run_convergence(const ExperimentConfig& cfg, Scheme which);

std::vector<SweepRecord> mean_rows(std::span<const SweepRecord> rows);

enum class Format
{
  Csv,
  Json,
};

Format parse_format(std::string_view name);

std::string to_csv(std::span<const SweepRecord> records);
std::string to_json(std::span<const SweepRecord> records);
std::vector<SweepRecord> parse_csv(std::string_view text);
std::vector<SweepRecord> parse_json(std::string_view text);

std::string serialize(std::span<const SweepRecord> records, Format format);
void write_file(const std::filesystem::path& path, std::string_view payload);
void emit(std::span<const SweepRecord> records, const std::filesystem::path& path, Format format);

} // namespace pinch
