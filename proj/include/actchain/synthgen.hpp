#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/types.hpp"

namespace actchain {

struct SynthWorld {
  Projection proj;
  std::vector<BaseStation> stations;
  std::vector<POI> pois;
};

struct ScheduleEntry {
  enum class Kind { Home, Work, Activity };
  Kind kind = Kind::Home;
  int poi = -1;  // index into SynthWorld::pois for Kind::Activity
  ActivityType type = ActivityType::Home;
  std::int64_t arrival = 0;    // epoch seconds UTC
  std::int64_t departure = 0;
  ProjectedPoint pos;
};

struct AgentTruth {
  std::string user_id;
  ProjectedPoint home;
  std::optional<ProjectedPoint> work;
  int archetype = 0;  // 0 work-led, 1 leisure-led, 2 home-led
  // Continuous dwell sequence over the study window; consecutive dwells
  // are separated by straight-line constant-speed travel.
  std::vector<ScheduleEntry> dwells;
};

SynthWorld generate_world(const SynthConfig& cfg);
std::vector<AgentTruth> generate_agents(const SynthConfig& cfg, const SynthWorld& world,
                                        std::int64_t utc_offset_s);

// First local day of the study window (a Monday).
std::int64_t synth_start_day();

void emit_xdr(const std::vector<AgentTruth>& agents, const SynthWorld& world,
              const SynthConfig& cfg, const std::string& path);
void emit_checkins(const std::vector<AgentTruth>& agents, const SynthWorld& world,
                   const SynthConfig& cfg, const std::string& path);
void emit_stations(const SynthWorld& world, const std::string& path);
void emit_pois(const SynthWorld& world, const std::string& path);
void emit_truth(const std::vector<AgentTruth>& agents, const SynthWorld& world,
                const std::string& path);

// Default mapping tables shipped with the generator's category vocabulary.
void write_default_category_map(const std::string& path);
void write_default_profession_map(const std::string& path);

}  // namespace actchain
