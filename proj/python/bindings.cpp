// Python access to the dataset, physics, metric and flow layers.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "flowdistill/cli/pipeline.hpp"
#include "flowdistill/eval/generate.hpp"
#include "flowdistill/eval/metrics.hpp"
#include "flowdistill/flow/flow.hpp"
#include "flowdistill/physics/physics.hpp"
#include "flowdistill/rng.hpp"
#include "flowdistill/synth/synth.hpp"

namespace py = pybind11;
namespace fd = flowdistill;

namespace {

using Grid = py::array_t<double, py::array::c_style | py::array::forcecast>;

fd::ResponseGrid to_grid(const Grid& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("expected a square 2-D array");
  fd::ResponseGrid g = fd::ResponseGrid::zeros(static_cast<int>(a.shape(0)));
  const auto r = a.unchecked<2>();
  for (int i = 0; i < g.size; ++i) {
    for (int j = 0; j < g.size; ++j) g.at(i, j) = static_cast<float>(r(i, j));
  }
  return g;
}

py::array_t<double> from_grid(const fd::ResponseGrid& g) {
  py::array_t<double> out({g.size, g.size});
  auto w = out.mutable_unchecked<2>();
  for (int i = 0; i < g.size; ++i) {
    for (int j = 0; j < g.size; ++j) w(i, j) = g.at(i, j);
  }
  return out;
}

// (conditions N x 10, responses N x G x G)
py::tuple from_samples(const std::vector<fd::Sample>& samples, int g) {
  py::array_t<double> cond({static_cast<py::ssize_t>(samples.size()), static_cast<py::ssize_t>(fd::kConditionDim)});
  py::array_t<double> resp({static_cast<py::ssize_t>(samples.size()), static_cast<py::ssize_t>(g), static_cast<py::ssize_t>(g)});
  auto c = cond.mutable_unchecked<2>();
  auto r = resp.mutable_unchecked<3>();
  for (std::size_t n = 0; n < samples.size(); ++n) {
    for (int k = 0; k < fd::kConditionDim; ++k) c(n, k) = samples[n].condition[static_cast<std::size_t>(k)];
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) r(n, i, j) = samples[n].response.at(i, j);
    }
  }
  return py::make_tuple(cond, resp);
}

std::vector<fd::Sample> to_samples(const py::array_t<double, py::array::c_style | py::array::forcecast>& cond,
                                   const py::array_t<double, py::array::c_style | py::array::forcecast>& resp) {
  if (cond.ndim() != 2 || cond.shape(1) != fd::kConditionDim) throw py::value_error("conditions must be N x 10");
  if (resp.ndim() != 3 || resp.shape(0) != cond.shape(0) || resp.shape(1) != resp.shape(2)) {
    throw py::value_error("responses must be N x G x G");
  }
  const auto c = cond.unchecked<2>();
  const auto r = resp.unchecked<3>();
  const int g = static_cast<int>(resp.shape(1));
  std::vector<fd::Sample> out(static_cast<std::size_t>(cond.shape(0)));
  for (std::size_t n = 0; n < out.size(); ++n) {
    for (int k = 0; k < fd::kConditionDim; ++k) out[n].condition[static_cast<std::size_t>(k)] = static_cast<float>(c(n, k));
    out[n].response = fd::ResponseGrid::zeros(g);
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) out[n].response.at(i, j) = static_cast<float>(r(n, i, j));
    }
  }
  return out;
}

std::vector<fd::physics::ChannelVector> to_channels(const fd::flow::Matrix& m) {
  if (m.cols() != fd::physics::kChannelCount) throw py::value_error("channel arrays must be N x 5");
  std::vector<fd::physics::ChannelVector> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (int c = 0; c < fd::physics::kChannelCount; ++c) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = m(i, c);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Teacher/student normalizing flows for calorimeter responses";

  py::register_exception<fd::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<fd::FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<fd::NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<fd::IoError>(m, "IoError", PyExc_OSError);

  // physics
  m.def("extract_channels", [](const Grid& g) { return fd::physics::extract_channels(to_grid(g)); }, py::arg("grid"));
  m.def("channel_of", &fd::physics::channel_of, py::arg("row"), py::arg("col"), py::arg("grid_size"));
  m.def(
      "diversity",
      [](const std::vector<Grid>& grids) {
        std::vector<fd::ResponseGrid> g;
        for (const Grid& a : grids) g.push_back(to_grid(a));
        return fd::physics::diversity(g);
      },
      py::arg("responses"));
  m.def(
      "inverse_diversity_weights",
      [](const std::vector<double>& f, const std::vector<int>& counts, double epsilon, double delta) {
        return fd::physics::inverse_diversity_weights(f, counts, {epsilon, delta});
      },
      py::arg("f_div"), py::arg("counts"), py::arg("epsilon") = 1e-3, py::arg("delta") = 1e-6);
  m.def(
      "preprocess",
      [](const Grid& g, std::uint64_t seed, double logit_clamp) {
        fd::physics::PreprocessConfig cfg;
        cfg.logit_clamp = logit_clamp;
        fd::CounterRng rng(seed);
        const fd::physics::Preprocessed p = fd::physics::preprocess(to_grid(g), cfg, rng);
        return py::make_tuple(p.logits, p.photon_sum);
      },
      py::arg("grid"), py::arg("seed") = 1, py::arg("logit_clamp") = 1e-6);
  m.def(
      "postprocess",
      [](const std::vector<double>& logits, double photon_sum, int grid_size, double logit_clamp) {
        fd::physics::PreprocessConfig cfg;
        cfg.logit_clamp = logit_clamp;
        return from_grid(fd::physics::postprocess(logits, photon_sum, grid_size, cfg));
      },
      py::arg("logits"), py::arg("photon_sum"), py::arg("grid_size"), py::arg("logit_clamp") = 1e-6);
  m.def(
      "soft_channels", [](const std::vector<double>& logits, int g) { return fd::physics::soft_channels(logits, g); },
      py::arg("logits"), py::arg("grid_size"));

  // metrics
  m.def(
      "wasserstein1", [](const std::vector<double>& a, const std::vector<double>& b) { return fd::eval::wasserstein1(a, b); },
      py::arg("a"), py::arg("b"));
  m.def(
      "ws_score",
      [](const fd::flow::Matrix& ref, const fd::flow::Matrix& gen) {
        return fd::eval::ws_score(to_channels(ref), to_channels(gen));
      },
      py::arg("reference"), py::arg("generated"));
  m.def(
      "channel_mae",
      [](const fd::flow::Matrix& ref, const std::vector<std::uint64_t>& ref_keys, const fd::flow::Matrix& gen,
         const std::vector<std::uint64_t>& gen_keys) {
        const fd::eval::ChannelMae r = fd::eval::channel_mae(to_channels(ref), ref_keys, to_channels(gen), gen_keys);
        return py::make_tuple(r.mae_c, r.mae_cw);
      },
      py::arg("reference"), py::arg("reference_keys"), py::arg("generated"), py::arg("generated_keys"));
  m.def(
      "shower_centre",
      [](const Grid& g) {
        const fd::eval::Centre c = fd::eval::shower_centre(to_grid(g));
        return py::make_tuple(c.row, c.col);
      },
      py::arg("grid"));
  m.def(
      "shower_radius", [](const Grid& g, double fraction) { return fd::eval::shower_radius(to_grid(g), fraction); },
      py::arg("grid"), py::arg("fraction") = 0.9);

  // data
  m.def(
      "generate_dataset",
      [](int total_samples, int repeats, int grid_size, std::uint64_t seed, bool quantile_placement) {
        fd::synth::GeneratorConfig c;
        c.total_samples = total_samples;
        c.repeats_per_condition = repeats;
        c.grid_size = grid_size;
        c.seed = seed;
        c.quantile_placement = quantile_placement;
        const fd::synth::GeneratedDataset d = fd::synth::generate_dataset(c);
        py::tuple t = from_samples(d.samples, grid_size);
        return py::make_tuple(t[0], t[1], d.type_index);
      },
      py::arg("total_samples") = 20000, py::arg("repeats") = 8, py::arg("grid_size") = 16, py::arg("seed") = 1,
      py::arg("quantile_placement") = false,
      "Returns (conditions N x 10, responses N x G x G, type index per sample).");
  m.def(
      "read_dataset",
      [](const std::filesystem::path& path) {
        int g = 0;
        const auto samples = fd::synth::read_dataset(path, &g);
        return from_samples(samples, g);
      },
      py::arg("path"));
  m.def(
      "write_dataset",
      [](const std::filesystem::path& path, const py::array_t<double, py::array::c_style | py::array::forcecast>& cond,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& resp) {
        fd::synth::write_dataset(path, to_samples(cond, resp), static_cast<int>(resp.shape(1)));
      },
      py::arg("path"), py::arg("conditions"), py::arg("responses"));
  m.def(
      "condition_key",
      [](const std::vector<double>& c) {
        if (c.size() != fd::kConditionDim) throw py::value_error("condition must have 10 entries");
        fd::ConditionVector v{};
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<float>(c[i]);
        return fd::condition_key(v);
      },
      py::arg("condition"));

  // flows
  py::class_<fd::flow::FlowStack>(m, "FlowStack")
      .def_static("load", &fd::flow::FlowStack::load, py::arg("path"))
      .def("save", &fd::flow::FlowStack::save, py::arg("path"))
      .def_property_readonly("dim", &fd::flow::FlowStack::dim)
      .def_property_readonly("cond_dim", &fd::flow::FlowStack::cond_dim)
      .def_property_readonly("layer_count", &fd::flow::FlowStack::layer_count)
      .def_property_readonly("is_teacher",
                             [](const fd::flow::FlowStack& s) { return s.direction() == fd::flow::Direction::kTeacher; })
      .def(
          "log_prob",
          [](const fd::flow::FlowStack& s, const fd::flow::Matrix& x, const fd::flow::Matrix& cond) {
            return fd::flow::maf_log_prob(s, x, cond);
          },
          py::arg("x"), py::arg("cond"), "Teacher density in logit space.")
      .def(
          "sample",
          [](const fd::flow::FlowStack& s, const fd::flow::Matrix& cond, std::uint64_t seed, std::uint64_t run) {
            return fd::eval::generate_logits(s, cond, seed, run, {256, 1, {}});
          },
          py::arg("cond"), py::arg("seed") = 1, py::arg("run") = 0, "Logit-space samples, one per condition row.");

  // pipeline
  m.def(
      "run_stage",
      [](const std::filesystem::path& config_path, const std::string& stage, const std::string& variant,
         bool self_check) {
        fd::cli::PipelineConfig c = fd::cli::PipelineConfig::load(config_path);
        std::string model = variant.empty() ? fd::flow::to_string(c.distill.variant) : variant;
        if (model != "teacher") c.distill.variant = fd::flow::parse_variant(model);
        c.validate();
        std::ostringstream log;
        if (stage == "gen-data") {
          fd::cli::cmd_gen_data(c, log);
        } else if (stage == "train-teacher") {
          fd::cli::cmd_train_teacher(c, log);
        } else if (stage == "distill") {
          fd::cli::cmd_distill(c, log);
        } else if (stage == "sample") {
          fd::cli::cmd_sample(c, model, log);
        } else if (stage == "eval") {
          fd::cli::cmd_eval(c, model, self_check, log);
        } else if (stage == "bench") {
          fd::cli::cmd_bench(c, false, log);
        } else {
          throw py::value_error("unknown stage '" + stage + "'");
        }
        return log.str();
      },
      py::arg("config"), py::arg("stage"), py::arg("variant") = "", py::arg("self_check") = false,
      py::call_guard<py::gil_scoped_release>(), "Runs one pipeline stage and returns its log text.");
}
