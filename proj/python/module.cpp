#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "actchain/analytics.hpp"
#include "actchain/config.hpp"
#include "actchain/lda.hpp"
#include "actchain/pipeline.hpp"
#include "actchain/staydetect.hpp"
#include "actchain/validate.hpp"

namespace py = pybind11;
using namespace actchain;

namespace {

PipelineConfig config_from_json_str(const std::string& config_json) {
  if (config_json.empty()) return PipelineConfig{};
  return PipelineConfig::from_json(nlohmann::json::parse(config_json));
}

}  // namespace

PYBIND11_MODULE(pyactchain, m) {
  m.doc() = "Activity-chain reconstruction pipeline bindings";

  m.def("default_config", [] { return PipelineConfig{}.to_json().dump(2); },
        "Default pipeline configuration as a JSON string.");

  m.def(
      "run_stage",
      [](const std::string& stage, const std::string& config_json,
         const std::vector<std::string>& overrides) {
        auto cfg = config_from_json_str(config_json);
        for (const auto& kv : overrides) cfg.apply_override(kv);
        return run_stage(stage, cfg).dump();
      },
      py::arg("stage"), py::arg("config_json") = std::string(),
      py::arg("overrides") = std::vector<std::string>{},
      "Runs one pipeline stage (synth, ingest, stays, label, profiles, "
      "infer, validate, lda, sweep, analytics, all); returns the JSON "
      "summary.");

  m.def(
      "dbscan",
      [](const std::vector<std::pair<double, double>>& points, double eps_m,
         int min_samples) {
        std::vector<ProjectedPoint> pts;
        pts.reserve(points.size());
        for (const auto& [x, y] : points) pts.push_back({x, y});
        return dbscan(pts, {eps_m, min_samples});
      },
      py::arg("points"), py::arg("eps_m"), py::arg("min_samples"),
      "Deterministic DBSCAN labels over (x, y) meter coordinates; -1 = noise.");

  m.def("hellinger", &hellinger, py::arg("p"), py::arg("q"),
        "Hellinger distance between two discrete distributions.");

  m.def("quantile", &quantile, py::arg("values"), py::arg("q"),
        "Empirical quantile with linear interpolation.");

  m.def(
      "fit_lognormal",
      [](const std::vector<double>& samples) {
        const auto fit = fit_lognormal(samples);
        return py::make_tuple(fit.mu, fit.sigma);
      },
      py::arg("samples"), "Log-normal MLE; returns (mu, sigma).");

  m.def(
      "gibbs_lda",
      [](const std::vector<std::vector<int>>& docs, int topics,
         const std::string& alpha, const std::string& beta, int sweeps,
         int burn_in, std::uint64_t seed) {
        std::vector<ActivityDocument> corpus(docs.size());
        for (std::size_t d = 0; d < docs.size(); ++d) {
          corpus[d].user_id = "u" + std::to_string(d);
          corpus[d].tokens = docs[d];
        }
        const auto model =
            gibbs_fit(corpus, topics, resolve_prior(alpha, topics, topics),
                      resolve_prior(beta, kLdaVocab, topics), sweeps, burn_in, seed);
        py::dict out;
        out["phi"] = model.phi;
        out["theta"] = model.theta;
        out["groups"] = assign_groups(model);
        return out;
      },
      py::arg("docs"), py::arg("topics"), py::arg("alpha") = "symmetric",
      py::arg("beta") = "symmetric", py::arg("sweeps") = 200,
      py::arg("burn_in") = 150, py::arg("seed") = 13,
      "Collapsed-Gibbs LDA over token-id documents (vocabulary 0..9).");
}
