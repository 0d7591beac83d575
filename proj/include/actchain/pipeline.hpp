#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "actchain/bayes.hpp"
#include "actchain/config.hpp"
#include "actchain/staylabel.hpp"
#include "actchain/types.hpp"

namespace actchain {

// Required input file absent or config unusable; maps to CLI exit 2.
struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Output-path rule: a name without '/' lives under io.out_dir; anything
// with a separator is taken as given. Inputs follow the same rule so a
// synth run and the stages consuming it agree on one directory.
std::string resolve_path(const IoConfig& io, const std::string& name);

// FNV-1a 64 of a file's bytes, as fixed-width hex; throws MissingInput.
std::string file_hash(const std::string& path);

// Projection about the station centroid (the study-area centroid proxy).
Projection study_projection(const std::vector<BaseStation>& stations);

// --- artifact (de)serialization -------------------------------------------

void write_stays_jsonl(const std::string& path,
                       const std::map<std::string, std::vector<StayPoint>>& by_user,
                       const Projection& proj);
std::map<std::string, std::vector<StayPoint>> read_stays_jsonl(
    const std::string& path, const Projection& proj);

void write_chains_jsonl(const std::string& path,
                        const std::vector<ActivityChain>& chains,
                        const Projection& proj);
std::vector<ActivityChain> read_chains_jsonl(const std::string& path,
                                             const Projection& proj);

void write_user_profiles_jsonl(const std::string& path,
                               const std::map<std::string, UserProfile>& profiles,
                               const Projection& proj);
std::map<std::string, UserProfile> read_user_profiles_jsonl(
    const std::string& path, const Projection& proj);

void write_temporal_profiles_csv(const std::string& path, const TemporalProfile& tp);
TemporalProfile read_temporal_profiles_csv(const std::string& path);

// --- stages ---------------------------------------------------------------
// Each stage reads its upstream artifacts from disk, writes its outputs,
// and returns a machine-readable summary holding at least "stage",
// "inputs" (paths read) and "outputs" (paths written).

nlohmann::json run_synth(const PipelineConfig& cfg);
nlohmann::json run_ingest(const PipelineConfig& cfg);
nlohmann::json run_stays(const PipelineConfig& cfg);
nlohmann::json run_label(const PipelineConfig& cfg);
nlohmann::json run_profiles(const PipelineConfig& cfg);
nlohmann::json run_infer(const PipelineConfig& cfg);
nlohmann::json run_validate(const PipelineConfig& cfg);
nlohmann::json run_lda(const PipelineConfig& cfg);
nlohmann::json run_sweep(const PipelineConfig& cfg);
nlohmann::json run_analytics(const PipelineConfig& cfg);
nlohmann::json run_all(const PipelineConfig& cfg);

// Dispatches a subcommand, then writes resolved_config.json and
// manifest.json (input hashes) next to the outputs. Unknown name throws
// std::invalid_argument.
nlohmann::json run_stage(const std::string& name, const PipelineConfig& cfg);

}  // namespace actchain
