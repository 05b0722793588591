#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "flowdistill/cli/config.hpp"
#include "flowdistill/error.hpp"
#include "flowdistill/eval/generate.hpp"
#include "flowdistill/eval/metrics.hpp"

namespace flowdistill::cli {

/// A stage's prerequisite file is absent.
class MissingArtifact : public Error {
 public:
  explicit MissingArtifact(const std::filesystem::path& path)
      : Error("missing artifact: " + path.string() + " (run the earlier stage first)") {}
};

/// --assert check failed.
class AssertionFailed : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadConfig = 2,
  kMissingArtifact = 3,
  kNonFinite = 4,
  kBadFormat = 5,
  kIo = 6,
  kAssertFailed = 7,
};

/// Maps the library's exception types to exit codes.
int exit_code_for(const std::exception& e);

/// Artifact layout under the configured output directory.
struct Layout {
  std::filesystem::path root;

  std::filesystem::path data_dir() const { return root / "data"; }
  std::filesystem::path split_file(const std::string& split) const { return data_dir() / (split + ".zds"); }
  std::filesystem::path manifest() const { return data_dir() / "manifest.tsv"; }
  std::filesystem::path diversity_table() const { return data_dir() / "diversity.tsv"; }
  std::filesystem::path teacher_dir() const { return root / "teacher"; }
  std::filesystem::path teacher_checkpoint() const { return teacher_dir() / "teacher.fdw"; }
  std::filesystem::path student_dir(const std::string& variant) const { return root / "students" / variant; }
  std::filesystem::path student_checkpoint(const std::string& variant) const {
    return student_dir(variant) / "student.fdw";
  }
  std::filesystem::path eval_dir(const std::string& model) const { return root / "eval" / model; }
  std::filesystem::path sample_dir(const std::string& model) const { return root / "samples" / model; }
  std::filesystem::path bench_dir() const { return root / "bench"; }
};

/// Writes train/validation/test splits, the manifest and the training diversity table.
void cmd_gen_data(const PipelineConfig& config, std::ostream& log);

flow::FlowStack cmd_train_teacher(const PipelineConfig& config, std::ostream& log);

/// Uses config.distill.variant.
flow::FlowStack cmd_distill(const PipelineConfig& config, std::ostream& log);

/// `model` is "teacher" or a variant name. Writes generated grids for the (limited) test
/// conditions as a dataset file and returns its path.
std::filesystem::path cmd_sample(const PipelineConfig& config, const std::string& model, std::ostream& log);

/// Generates eval_runs response sets for the test conditions and scores them against the
/// test split. With `self_check` the test split is scored against a copy of itself and a
/// nonzero metric raises AssertionFailed.
eval::MetricReport cmd_eval(const PipelineConfig& config, const std::string& model, bool self_check,
                            std::ostream& log);

/// With `assert_floor`, a speedup below bench.min_speedup or a call ratio different from D
/// raises AssertionFailed.
eval::BenchResult cmd_bench(const PipelineConfig& config, bool assert_floor, std::ostream& log);

/// Test split (after eval.test_limit) as flow data plus the raw grids.
struct TestSet {
  std::vector<Sample> samples;
  flow::FlowData data;
};
TestSet load_test_set(const PipelineConfig& config);

flow::FlowStack load_model(const PipelineConfig& config, const std::string& model);

}  // namespace flowdistill::cli
