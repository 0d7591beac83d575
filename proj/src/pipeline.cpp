#include "actchain/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "actchain/analytics.hpp"
#include "actchain/csv.hpp"
#include "actchain/ingest.hpp"
#include "actchain/lda.hpp"
#include "actchain/staydetect.hpp"
#include "actchain/synthgen.hpp"
#include "actchain/validate.hpp"

namespace actchain {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("missing input: " + path);
  return in;
}

// Station centroid read ahead of full parsing so every stage projects
// about the same origin.
Projection projection_from_stations(const std::string& path) {
  auto in = open_input(path);
  in.close();
  csv::Reader r(path);
  const int c_lon = r.column("lon"), c_lat = r.column("lat");
  if (c_lon < 0 || c_lat < 0)
    throw std::runtime_error(path + ": missing lon/lat columns");
  double sum_lon = 0, sum_lat = 0;
  std::size_t n = 0;
  r.for_each([&](const std::vector<std::string>& row) {
    sum_lon += std::stod(row[c_lon]);
    sum_lat += std::stod(row[c_lat]);
    ++n;
  });
  if (n == 0) throw std::runtime_error(path + ": no stations");
  return Projection(sum_lon / n, sum_lat / n);
}

struct Env {
  PipelineConfig cfg;
  Projection proj;
  std::vector<BaseStation> stations;
};

Env load_env(const PipelineConfig& cfg) {
  const std::string path = resolve_path(cfg.io, cfg.io.stations);
  Env env{cfg, projection_from_stations(path), {}};
  env.stations = parse_stations(path, env.proj);
  return env;
}

json stay_to_json(const StayPoint& s, const Projection& proj) {
  double lon, lat;
  proj.unproject(s.center, lon, lat);
  json j{{"user_id", s.user_id},
         {"x", s.center.x},
         {"y", s.center.y},
         {"lon", lon},
         {"lat", lat},
         {"arrival", s.arrival},
         {"departure", s.departure},
         {"kind", s.kind == StayKind::Stay ? "Stay" : "PassBy"},
         {"station_id", s.station_id},
         {"place_id", s.place_id},
         {"n_records", s.n_records}};
  switch (s.label) {
    case StayLabel::Home: j["label"] = "Home"; break;
    case StayLabel::Work: j["label"] = "Work"; break;
    case StayLabel::Other: j["label"] = "Other"; break;
    case StayLabel::Unlabeled: j["label"] = "Unlabeled"; break;
  }
  if (s.activity) j["activity"] = std::string(to_string(*s.activity));
  return j;
}

StayPoint stay_from_json(const json& j, const Projection& proj) {
  StayPoint s;
  s.user_id = j.at("user_id").get<std::string>();
  s.center = proj.project(j.at("lon").get<double>(), j.at("lat").get<double>());
  s.arrival = j.at("arrival").get<std::int64_t>();
  s.departure = j.at("departure").get<std::int64_t>();
  s.kind = j.at("kind").get<std::string>() == "Stay" ? StayKind::Stay
                                                     : StayKind::PassBy;
  s.station_id = j.at("station_id").get<std::string>();
  s.place_id = j.at("place_id").get<int>();
  s.n_records = j.at("n_records").get<int>();
  const std::string label = j.at("label").get<std::string>();
  s.label = label == "Home"    ? StayLabel::Home
            : label == "Work"  ? StayLabel::Work
            : label == "Other" ? StayLabel::Other
                               : StayLabel::Unlabeled;
  if (j.contains("activity"))
    s.activity = activity_type_from_string(j.at("activity").get<std::string>());
  return s;
}

std::string_view purpose_name(TripPurpose p) { return to_string(p); }

TripPurpose purpose_from(const std::string& s) {
  if (s == "HBW") return TripPurpose::HBW;
  if (s == "HBO") return TripPurpose::HBO;
  return TripPurpose::NHB;
}

// records.jsonl: one line per kept user-day.
void write_records_jsonl(
    const std::string& path,
    const std::map<std::string, std::map<std::int64_t, std::vector<Record>>>& days) {
  std::ofstream out(path);
  for (const auto& [user, by_day] : days) {
    for (const auto& [day, records] : by_day) {
      json arr = json::array();
      for (const Record& r : records)
        arr.push_back(json::array({r.timestamp, r.lon, r.lat, r.station_id}));
      json line{{"user_id", user}, {"day", day}, {"records", std::move(arr)}};
      out << line.dump() << "\n";
    }
  }
}

std::map<std::string, std::map<std::int64_t, std::vector<Record>>> read_records_jsonl(
    const std::string& path, const Projection& proj) {
  auto in = open_input(path);
  std::map<std::string, std::map<std::int64_t, std::vector<Record>>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const auto user = j.at("user_id").get<std::string>();
    auto& day = out[user][j.at("day").get<std::int64_t>()];
    for (const auto& rec : j.at("records")) {
      Record r;
      r.user_id = user;
      r.timestamp = rec.at(0).get<std::int64_t>();
      r.lon = rec.at(1).get<double>();
      r.lat = rec.at(2).get<double>();
      r.station_id = rec.at(3).get<std::string>();
      r.pos = proj.project(r.lon, r.lat);
      day.push_back(std::move(r));
    }
  }
  return out;
}

std::map<std::string, std::vector<CheckIn>> load_checkins(const PipelineConfig& cfg,
                                                          const CategoryMap& categories) {
  const std::string path = resolve_path(cfg.io, cfg.io.checkins);
  open_input(path);
  auto checkins = parse_checkins(path, categories);
  remove_visitors(checkins, cfg.ingest.visitor_min_span_days);
  return checkins;
}

CategoryMap load_categories(const PipelineConfig& cfg) {
  const std::string path = resolve_path(cfg.io, cfg.io.category_map);
  open_input(path);
  return CategoryMap::load_csv(path);
}

std::vector<ActivityChain> load_chains(const PipelineConfig& cfg,
                                       const Projection& proj,
                                       const std::string& name) {
  return read_chains_jsonl(resolve_path(cfg.io, name), proj);
}

std::map<std::string, std::vector<ActivityChain>> group_by_user(
    const std::vector<ActivityChain>& chains) {
  std::map<std::string, std::vector<ActivityChain>> out;
  for (const auto& c : chains) out[c.user_id].push_back(c);
  return out;
}

std::string hhmm(std::int64_t local_s) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d%02d", static_cast<int>(local_s / 3600),
                static_cast<int>(local_s % 3600 / 60));
  return buf;
}

const char* kStateNames[kTransitionStates] = {
    "Shopping", "DailyLife", "Transport", "DrinkEat", "LeisureSport",
    "Education", "Home",      "Work",      "Other",    "Gap"};

}  // namespace

std::string resolve_path(const IoConfig& io, const std::string& name) {
  if (name.find('/') != std::string::npos) return name;
  return io.out_dir + "/" + name;
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInput("missing input: " + path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

Projection study_projection(const std::vector<BaseStation>& stations) {
  if (stations.empty()) throw std::invalid_argument("no stations");
  double sum_lon = 0, sum_lat = 0;
  for (const auto& s : stations) {
    sum_lon += s.lon;
    sum_lat += s.lat;
  }
  return Projection(sum_lon / stations.size(), sum_lat / stations.size());
}

void write_stays_jsonl(const std::string& path,
                       const std::map<std::string, std::vector<StayPoint>>& by_user,
                       const Projection& proj) {
  std::ofstream out(path);
  for (const auto& [user, stays] : by_user)
    for (const StayPoint& s : stays) out << stay_to_json(s, proj).dump() << "\n";
}

std::map<std::string, std::vector<StayPoint>> read_stays_jsonl(
    const std::string& path, const Projection& proj) {
  auto in = open_input(path);
  std::map<std::string, std::vector<StayPoint>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    StayPoint s = stay_from_json(json::parse(line), proj);
    out[s.user_id].push_back(std::move(s));
  }
  return out;
}

void write_chains_jsonl(const std::string& path,
                        const std::vector<ActivityChain>& chains,
                        const Projection& proj) {
  std::ofstream out(path);
  for (const ActivityChain& c : chains) {
    json stays = json::array();
    for (const StayPoint& s : c.stays) stays.push_back(stay_to_json(s, proj));
    json trips = json::array();
    for (const Trip& t : c.trips)
      trips.push_back(json{{"origin", t.origin},
                           {"destination", t.destination},
                           {"purpose", std::string(purpose_name(t.purpose))}});
    out << json{{"user_id", c.user_id},
                {"day", c.day},
                {"stays", std::move(stays)},
                {"trips", std::move(trips)}}
               .dump()
        << "\n";
  }
}

std::vector<ActivityChain> read_chains_jsonl(const std::string& path,
                                             const Projection& proj) {
  auto in = open_input(path);
  std::vector<ActivityChain> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    ActivityChain c;
    c.user_id = j.at("user_id").get<std::string>();
    c.day = j.at("day").get<std::int64_t>();
    for (const auto& s : j.at("stays")) c.stays.push_back(stay_from_json(s, proj));
    for (const auto& t : j.at("trips")) {
      Trip trip;
      trip.origin = t.at("origin").get<std::size_t>();
      trip.destination = t.at("destination").get<std::size_t>();
      trip.purpose = purpose_from(t.at("purpose").get<std::string>());
      c.trips.push_back(trip);
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_user_profiles_jsonl(const std::string& path,
                               const std::map<std::string, UserProfile>& profiles,
                               const Projection& proj) {
  std::ofstream out(path);
  for (const auto& [user, p] : profiles) {
    json j{{"user_id", user},
           {"home_place", p.home_place},
           {"work_place", p.work_place},
           {"is_resident", p.is_resident},
           {"is_commuter", p.is_commuter}};
    auto point = [&](const std::optional<ProjectedPoint>& pt) -> json {
      if (!pt) return nullptr;
      double lon, lat;
      proj.unproject(*pt, lon, lat);
      return json{{"lon", lon}, {"lat", lat}};
    };
    j["home"] = point(p.home);
    j["work"] = point(p.work);
    out << j.dump() << "\n";
  }
}

std::map<std::string, UserProfile> read_user_profiles_jsonl(
    const std::string& path, const Projection& proj) {
  auto in = open_input(path);
  std::map<std::string, UserProfile> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    UserProfile p;
    p.user_id = j.at("user_id").get<std::string>();
    p.home_place = j.at("home_place").get<int>();
    p.work_place = j.at("work_place").get<int>();
    p.is_resident = j.at("is_resident").get<bool>();
    p.is_commuter = j.at("is_commuter").get<bool>();
    auto point = [&](const json& pt) -> std::optional<ProjectedPoint> {
      if (pt.is_null()) return std::nullopt;
      return proj.project(pt.at("lon").get<double>(), pt.at("lat").get<double>());
    };
    p.home = point(j.at("home"));
    p.work = point(j.at("work"));
    out.emplace(p.user_id, std::move(p));
  }
  return out;
}

void write_temporal_profiles_csv(const std::string& path, const TemporalProfile& tp) {
  std::ofstream out(path);
  out << "activity_type";
  for (int s = 0; s < tp.slots; ++s) out << ",slot_" << s;
  out << "\n";
  char buf[32];
  for (ActivityType t : kInferableTypes) {
    out << to_string(t);
    for (double v : tp.row(t)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << "," << buf;
    }
    out << "\n";
  }
}

TemporalProfile read_temporal_profiles_csv(const std::string& path) {
  open_input(path);
  csv::Reader r(path);
  TemporalProfile tp;
  tp.slots = static_cast<int>(r.header.size()) - 1;
  if (tp.slots <= 0) throw std::runtime_error(path + ": malformed header");
  r.for_each([&](const std::vector<std::string>& row) {
    const auto t = activity_type_from_string(row[0]);
    if (!t || inferable_index(*t) < 0)
      throw std::runtime_error(path + ": bad activity_type " + row[0]);
    auto& dst = tp.p[inferable_index(*t)];
    dst.clear();
    for (std::size_t i = 1; i < row.size(); ++i) dst.push_back(std::stod(row[i]));
    if (static_cast<int>(dst.size()) != tp.slots)
      throw std::runtime_error(path + ": row width mismatch");
  });
  for (ActivityType t : kInferableTypes)
    if (tp.row(t).empty())
      throw std::runtime_error(path + ": missing row for " +
                               std::string(to_string(t)));
  return tp;
}

nlohmann::json run_synth(const PipelineConfig& cfg) {
  fs::create_directories(cfg.io.out_dir);
  const SynthWorld world = generate_world(cfg.synth);
  const auto agents = generate_agents(cfg.synth, world, cfg.utc_offset_s());

  const auto path = [&](const std::string& n) { return resolve_path(cfg.io, n); };
  emit_xdr(agents, world, cfg.synth, path(cfg.io.xdr));
  emit_checkins(agents, world, cfg.synth, path(cfg.io.checkins));
  emit_stations(world, path(cfg.io.stations));
  emit_pois(world, path(cfg.io.pois));
  emit_truth(agents, world, path(cfg.io.truth));
  write_default_category_map(path(cfg.io.category_map));
  write_default_profession_map(path(cfg.io.profession_map));

  return json{{"stage", "synth"},
              {"inputs", json::array()},
              {"outputs",
               {path(cfg.io.xdr), path(cfg.io.checkins), path(cfg.io.stations),
                path(cfg.io.pois), path(cfg.io.truth), path(cfg.io.category_map),
                path(cfg.io.profession_map)}},
              {"agents", agents.size()},
              {"stations", world.stations.size()},
              {"pois", world.pois.size()}};
}

nlohmann::json run_ingest(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const std::string xdr_path = resolve_path(cfg.io, cfg.io.xdr);
  open_input(xdr_path);
  const XdrData data = parse_xdr(xdr_path, env.proj, cfg.ingest);

  std::map<std::string, std::map<std::int64_t, std::vector<Record>>> kept;
  std::size_t user_days = 0;
  for (const auto& [user, records] : data.by_user) {
    auto days = partition_days(records, cfg.ingest, cfg.utc_offset_s(),
                               cfg.time.exclude_weekends);
    if (days.empty()) continue;
    user_days += days.size();
    kept.emplace(user, std::move(days));
  }

  const std::string records_path = resolve_path(cfg.io, "records.jsonl");
  write_records_jsonl(records_path, kept);

  json report{{"rows", data.stats.rows},
              {"malformed", data.stats.malformed},
              {"deduplicated", data.stats.deduplicated},
              {"users_in", data.by_user.size()},
              {"users_kept", kept.size()},
              {"user_days", user_days}};
  std::ofstream(resolve_path(cfg.io, "ingest_report.json")) << report.dump(2) << "\n";

  report["stage"] = "ingest";
  report["inputs"] = {xdr_path, resolve_path(cfg.io, cfg.io.stations)};
  report["outputs"] = {records_path, resolve_path(cfg.io, "ingest_report.json")};
  return report;
}

nlohmann::json run_stays(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const std::string records_path = resolve_path(cfg.io, "records.jsonl");
  const auto days = read_records_jsonl(records_path, env.proj);

  std::map<std::string, std::vector<StayPoint>> by_user;
  std::size_t n_stay = 0, n_pass = 0;
  for (const auto& [user, by_day] : days) {
    std::vector<Record> all;
    for (const auto& [day, records] : by_day)
      all.insert(all.end(), records.begin(), records.end());
    auto stays = detect_stays(std::move(all), cfg.stay);
    for (const auto& s : stays) (s.kind == StayKind::Stay ? n_stay : n_pass)++;
    by_user.emplace(user, std::move(stays));
  }

  const std::string stays_path = resolve_path(cfg.io, "stays.jsonl");
  write_stays_jsonl(stays_path, by_user, env.proj);
  return json{{"stage", "stays"},
              {"inputs", {records_path, resolve_path(cfg.io, cfg.io.stations)}},
              {"outputs", {stays_path}},
              {"users", by_user.size()},
              {"stays", n_stay},
              {"pass_bys", n_pass}};
}

nlohmann::json run_label(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const std::string stays_path = resolve_path(cfg.io, "stays.jsonl");
  auto by_user = read_stays_jsonl(stays_path, env.proj);

  std::map<std::string, UserProfile> profiles;
  std::vector<ActivityChain> chains;
  std::size_t residents = 0, commuters = 0;
  for (auto& [user, stays] : by_user) {
    UserProfile p = build_profile(user, stays, cfg.label, cfg.utc_offset_s());
    if (p.is_resident) {
      ++residents;
      commuters += p.is_commuter;
      label_stays(stays, p);
      auto user_chains =
          build_chains(stays, cfg.utc_offset_s(), cfg.time.exclude_weekends);
      chains.insert(chains.end(), std::make_move_iterator(user_chains.begin()),
                    std::make_move_iterator(user_chains.end()));
    }
    profiles.emplace(user, std::move(p));
  }

  const std::string profiles_path = resolve_path(cfg.io, "profiles.jsonl");
  const std::string chains_path = resolve_path(cfg.io, "chains.jsonl");
  write_user_profiles_jsonl(profiles_path, profiles, env.proj);
  write_chains_jsonl(chains_path, chains, env.proj);
  return json{{"stage", "label"},
              {"inputs", {stays_path, resolve_path(cfg.io, cfg.io.stations)}},
              {"outputs", {profiles_path, chains_path}},
              {"users", by_user.size()},
              {"residents", residents},
              {"commuters", commuters},
              {"chains", chains.size()}};
}

nlohmann::json run_profiles(const PipelineConfig& cfg) {
  const CategoryMap categories = load_categories(cfg);
  const auto checkins = load_checkins(cfg, categories);
  const TemporalProfile tp =
      build_temporal_profiles(checkins, cfg.bayes, cfg.utc_offset_s());

  const std::string out_path = resolve_path(cfg.io, "temporal_profiles.csv");
  write_temporal_profiles_csv(out_path, tp);

  json empty = json::array();
  for (ActivityType t : tp.empty_types) empty.push_back(std::string(to_string(t)));
  return json{{"stage", "profiles"},
              {"inputs",
               {resolve_path(cfg.io, cfg.io.checkins),
                resolve_path(cfg.io, cfg.io.category_map)}},
              {"outputs", {out_path}},
              {"checkin_users", checkins.size()},
              {"uniform_fallback_types", std::move(empty)}};
}

nlohmann::json run_infer(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const CategoryMap categories = load_categories(cfg);

  const std::string pois_path = resolve_path(cfg.io, cfg.io.pois);
  open_input(pois_path);
  std::vector<std::string> unknown;
  const auto pois = parse_pois(pois_path, env.proj, categories, &unknown);
  const StationIndex index(env.stations, cfg.ingest.station_grid_cell_m);
  const CandidateIndex candidates(pois, index, cfg.bayes.candidate_buffer_m);
  const TemporalProfile tp =
      read_temporal_profiles_csv(resolve_path(cfg.io, "temporal_profiles.csv"));

  auto chains = load_chains(cfg, env.proj, "chains.jsonl");
  std::size_t inferred = 0;
  for (ActivityChain& c : chains)
    for (StayPoint& s : c.stays) {
      if (s.kind != StayKind::Stay) continue;
      s.activity = infer_activity(s, tp, candidates, cfg.bayes, cfg.utc_offset_s());
      ++inferred;
    }

  const std::string out_chains = resolve_path(cfg.io, "inferred_chains.jsonl");
  write_chains_jsonl(out_chains, chains, env.proj);

  // Commuter professions from the candidate POIs of their work station.
  const auto user_profiles =
      read_user_profiles_jsonl(resolve_path(cfg.io, "profiles.jsonl"), env.proj);
  const std::string prof_map_path = resolve_path(cfg.io, cfg.io.profession_map);
  open_input(prof_map_path);
  const ProfessionMap professions = ProfessionMap::load_csv(prof_map_path);

  std::map<std::string, std::string> work_station;
  for (const ActivityChain& c : chains)
    for (const StayPoint& s : c.stays)
      if (s.label == StayLabel::Work && !s.station_id.empty())
        work_station.emplace(c.user_id, s.station_id);

  const std::string prof_path = resolve_path(cfg.io, "professions.csv");
  std::ofstream prof_out(prof_path);
  prof_out << "user_id,profession\n";
  std::size_t n_prof = 0;
  for (const auto& [user, p] : user_profiles) {
    if (!p.is_commuter) continue;
    const auto it = work_station.find(user);
    const std::string label =
        it == work_station.end()
            ? "Other"
            : infer_profession(it->second, candidates, professions);
    prof_out << user << "," << label << "\n";
    ++n_prof;
  }

  return json{{"stage", "infer"},
              {"inputs",
               {resolve_path(cfg.io, "chains.jsonl"),
                resolve_path(cfg.io, "temporal_profiles.csv"), pois_path,
                resolve_path(cfg.io, cfg.io.stations),
                resolve_path(cfg.io, cfg.io.category_map),
                resolve_path(cfg.io, "profiles.jsonl"), prof_map_path}},
              {"outputs", {out_chains, prof_path}},
              {"stays_inferred", inferred},
              {"professions", n_prof},
              {"unknown_poi_categories", unknown.size()}};
}

nlohmann::json run_validate(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const CategoryMap categories = load_categories(cfg);
  const auto chains = load_chains(cfg, env.proj, "inferred_chains.jsonl");
  auto checkins = load_checkins(cfg, categories);
  // Keep the reference on the same days the chains cover.
  if (cfg.time.exclude_weekends) {
    for (auto& [user, events] : checkins)
      std::erase_if(events, [&](const CheckIn& c) {
        return is_weekend_day(local_day(c.timestamp, cfg.utc_offset_s()));
      });
  }
  const auto by_user = group_by_user(chains);

  // Per-type accuracy wherever both the reconstruction and the reference
  // have data; overall accuracy averages the evaluated types.
  std::vector<ActivityType> evaluated;
  json types = json::object();
  std::vector<std::vector<double>> hourly_rows;
  double acc_sum = 0;
  for (ActivityType t : kInferableTypes) {
    FractionSeries pred, ref;
    try {
      pred = expand_stay_slots(chains, t, cfg.validate, cfg.utc_offset_s());
      ref = checkin_series(checkins, t, cfg.validate, cfg.utc_offset_s());
    } catch (const std::runtime_error&) {
      continue;  // type absent on one side
    }
    const auto hourly = mape_per_hour(pred, ref, cfg.validate);
    const double acc = reconstruction_accuracy(pred, ref, cfg.validate);
    json hours = json::array();
    for (double v : hourly) hours.push_back(std::isnan(v) ? json(nullptr) : json(v));
    types[std::string(to_string(t))] = {{"accuracy", acc},
                                        {"hourly_mape", std::move(hours)}};
    evaluated.push_back(t);
    hourly_rows.push_back(hourly);
    acc_sum += acc;
  }
  if (evaluated.empty())
    throw std::runtime_error("no activity type present in both chains and check-ins");

  const auto widths =
      bootstrap_ci(by_user, evaluated, cfg.validate, cfg.utc_offset_s());
  for (std::size_t i = 0; i < evaluated.size(); ++i) {
    const auto& w = widths.at(evaluated[i]);
    const double mean_w =
        w.empty() ? 0.0
                  : std::accumulate(w.begin(), w.end(), 0.0) / w.size();
    types[std::string(to_string(evaluated[i]))]["mean_ci_width"] = mean_w;
  }

  json report{{"overall_accuracy", acc_sum / evaluated.size()},
              {"types", std::move(types)}};
  const std::string report_path = resolve_path(cfg.io, "validation_report.json");
  std::ofstream(report_path) << report.dump(2) << "\n";

  // CSV mirrors for plotting.
  const std::string hourly_path = resolve_path(cfg.io, "validation_hourly.csv");
  {
    std::ofstream out(hourly_path);
    out << "activity_type,hour,mape\n";
    const int h0 = static_cast<int>(cfg.validate.window_start_hour);
    for (std::size_t i = 0; i < evaluated.size(); ++i)
      for (std::size_t h = 0; h < hourly_rows[i].size(); ++h) {
        out << to_string(evaluated[i]) << "," << (h0 + h) << ",";
        if (!std::isnan(hourly_rows[i][h])) out << hourly_rows[i][h];
        out << "\n";
      }
  }
  const std::string ci_path = resolve_path(cfg.io, "validation_ci.csv");
  {
    std::ofstream out(ci_path);
    out << "activity_type,slot,ci_width\n";
    for (ActivityType t : evaluated) {
      const auto& w = widths.at(t);
      for (std::size_t s = 0; s < w.size(); ++s)
        out << to_string(t) << "," << s << "," << w[s] << "\n";
    }
  }

  report["stage"] = "validate";
  report["inputs"] = {resolve_path(cfg.io, "inferred_chains.jsonl"),
                      resolve_path(cfg.io, cfg.io.checkins),
                      resolve_path(cfg.io, cfg.io.category_map),
                      resolve_path(cfg.io, cfg.io.stations)};
  report["outputs"] = {report_path, hourly_path, ci_path};
  return report;
}

namespace {

std::vector<ActivityDocument> load_documents(const PipelineConfig& cfg,
                                             const Env& env) {
  const auto chains = load_chains(cfg, env.proj, "inferred_chains.jsonl");
  return tokenize_chains(chains, cfg.lda, cfg.utc_offset_s());
}

}  // namespace

nlohmann::json run_lda(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const auto docs = load_documents(cfg, env);
  const int K = cfg.lda.topics;
  const auto alpha = resolve_prior(cfg.lda.alpha, K, K);
  const auto beta = resolve_prior(cfg.lda.beta, kLdaVocab, K);
  const TopicModel model = gibbs_fit(docs, K, alpha, beta, cfg.lda.sweeps,
                                     cfg.lda.burn_in, cfg.lda.seed);
  const CoherenceResult coherence =
      umass_coherence(model, docs, cfg.lda.coherence_top_n);

  json mj{{"K", model.K},         {"seed", model.seed}, {"alpha", model.alpha},
          {"beta", model.beta},   {"phi", model.phi},   {"theta", model.theta},
          {"coherence", coherence.mean}};
  const std::string model_path = resolve_path(cfg.io, "lda_model.json");
  std::ofstream(model_path) << mj.dump() << "\n";

  const auto groups = assign_user_groups(model, docs);
  const std::string groups_path = resolve_path(cfg.io, "groups.csv");
  {
    std::ofstream out(groups_path);
    out << "user_id,group\n";
    for (const auto& [user, g] : groups) out << user << "," << g << "\n";
  }

  return json{{"stage", "lda"},
              {"inputs", {resolve_path(cfg.io, "inferred_chains.jsonl"),
                          resolve_path(cfg.io, cfg.io.stations)}},
              {"outputs", {model_path, groups_path}},
              {"documents", docs.size()},
              {"coherence", coherence.mean}};
}

nlohmann::json run_sweep(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const auto docs = load_documents(cfg, env);
  std::vector<int> topic_counts;
  for (int k = cfg.lda.sweep_topics_min; k <= cfg.lda.sweep_topics_max; ++k)
    topic_counts.push_back(k);
  const auto cells = hyperparameter_sweep(
      docs, cfg.lda.sweep_alphas, cfg.lda.sweep_betas, topic_counts,
      cfg.lda.sweep_sweeps, cfg.lda.sweep_burn_in, cfg.lda.coherence_top_n,
      cfg.lda.seed);

  const std::string sweep_path = resolve_path(cfg.io, "sweep.csv");
  json errors = json::array();
  {
    std::ofstream out(sweep_path);
    out << "alpha,beta,K,coherence\n";
    for (const SweepCell& c : cells) {
      if (!c.ok) {
        errors.push_back(c.error);
        continue;
      }
      out << c.alpha << "," << c.beta << "," << c.K << "," << c.coherence << "\n";
    }
  }
  return json{{"stage", "sweep"},
              {"inputs", {resolve_path(cfg.io, "inferred_chains.jsonl"),
                          resolve_path(cfg.io, cfg.io.stations)}},
              {"outputs", {sweep_path}},
              {"cells", cells.size()},
              {"errors", std::move(errors)}};
}

nlohmann::json run_analytics(const PipelineConfig& cfg) {
  const Env env = load_env(cfg);
  const auto chains = load_chains(cfg, env.proj, "inferred_chains.jsonl");
  const auto profiles =
      read_user_profiles_jsonl(resolve_path(cfg.io, "profiles.jsonl"), env.proj);

  const std::string dir = resolve_path(cfg.io, "analytics");
  fs::create_directories(dir);
  json outputs = json::array();
  const auto emit = [&](const std::string& name,
                        const std::function<void(std::ofstream&)>& fn) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    fn(out);
    outputs.push_back(path);
  };

  const CountSummary locations = daily_location_count(chains);
  emit("location_counts.csv", [&](std::ofstream& out) {
    out << "value\n";
    for (double v : locations.values) out << v << "\n";
  });
  const CountSummary travel = daily_travel_distance(chains, profiles);
  emit("travel_distance.csv", [&](std::ofstream& out) {
    out << "value\n";
    for (double v : travel.values) out << v << "\n";
  });
  emit("lognormal_fits.csv", [&](std::ofstream& out) {
    out << "metric,mu,sigma,sample_mean\n";
    out << "locations," << locations.fit.mu << "," << locations.fit.sigma << ","
        << locations.fit.sample_mean << "\n";
    out << "travel_km," << travel.fit.mu << "," << travel.fit.sigma << ","
        << travel.fit.sample_mean << "\n";
  });

  const HourlyPurposeShares purposes =
      trip_purpose_fractions(chains, cfg.utc_offset_s());
  emit("trip_purpose_hourly.csv", [&](std::ofstream& out) {
    out << "hour,hbw,hbo,nhb\n";
    for (int h = 0; h < 24; ++h)
      out << h << "," << purposes[h][0] << "," << purposes[h][1] << ","
          << purposes[h][2] << "\n";
  });

  for (const auto& [t1, t2] : std::vector<std::pair<int, int>>{
           {8, 9}, {12, 13}, {18, 19}}) {
    const TransitionMatrix m = transition_matrix(
        chains, t1 * 3600LL, t2 * 3600LL, cfg.utc_offset_s());
    emit("transitions_" + hhmm(m.t1) + "_" + hhmm(m.t2) + ".csv",
         [&](std::ofstream& out) {
           out << "from";
           for (const char* s : kStateNames) out << "," << s;
           out << "\n";
           for (int i = 0; i < kTransitionStates; ++i) {
             out << kStateNames[i];
             for (int j = 0; j < kTransitionStates; ++j) out << "," << m.p[i][j];
             out << "\n";
           }
         });
  }

  const TimeUseSummary time_use = time_use_summary(chains, profiles);
  emit("time_use.csv", [&](std::ofstream& out) {
    out << "activity,commuter_hours,non_commuter_hours\n";
    std::set<std::string> rows;
    for (const auto& [k, v] : time_use.commuter) rows.insert(k);
    for (const auto& [k, v] : time_use.non_commuter) rows.insert(k);
    for (const auto& row : rows) {
      const auto c = time_use.commuter.find(row);
      const auto n = time_use.non_commuter.find(row);
      out << row << "," << (c == time_use.commuter.end() ? 0.0 : c->second)
          << "," << (n == time_use.non_commuter.end() ? 0.0 : n->second) << "\n";
    }
  });

  const ArrivalDurationHist hist = arrival_duration_hist(
      chains, ActivityType::DrinkEat, profiles, cfg.utc_offset_s());
  emit("arrival_duration_drinkeat.csv", [&](std::ofstream& out) {
    out << "cohort,arrival_bin,duration_bin,count\n";
    const auto rows = [&](const char* name,
                          const std::vector<std::vector<double>>& h) {
      for (std::size_t a = 0; a < h.size(); ++a)
        for (std::size_t d = 0; d < h[a].size(); ++d)
          if (h[a][d] > 0)
            out << name << "," << a << "," << d << "," << h[a][d] << "\n";
    };
    rows("commuter", hist.commuter);
    rows("non_commuter", hist.non_commuter);
  });

  json inputs = json::array(
      {resolve_path(cfg.io, "inferred_chains.jsonl"),
       resolve_path(cfg.io, "profiles.jsonl"), resolve_path(cfg.io, cfg.io.stations)});
  bool have_groups = false;
  const std::string groups_path = resolve_path(cfg.io, "groups.csv");
  if (fs::exists(groups_path)) {
    have_groups = true;
    std::map<std::string, int> groups;
    csv::Reader r(groups_path);
    const int cu = r.column("user_id"), cg = r.column("group");
    r.for_each([&](const std::vector<std::string>& row) {
      groups[row[cu]] = std::stoi(row[cg]);
    });
    const auto gp = group_profiles(chains, groups, profiles);
    emit("group_profiles.csv", [&](std::ofstream& out) {
      out << "group,n_users,mean_travel_km,mean_locations,activity_type,share\n";
      for (const GroupProfile& g : gp)
        for (const auto& [name, share] : g.activity_shares)
          out << g.group << "," << g.n_users << "," << g.mean_travel_km << ","
              << g.mean_locations << "," << name << "," << share << "\n";
    });
    inputs.push_back(groups_path);
  }

  return json{{"stage", "analytics"},
              {"inputs", std::move(inputs)},
              {"outputs", std::move(outputs)},
              {"user_days", locations.values.size()},
              {"group_profiles", have_groups}};
}

nlohmann::json run_all(const PipelineConfig& cfg) {
  json summary{{"stage", "all"}, {"stages", json::array()}};
  std::set<std::string> inputs, outputs;
  for (const char* name : {"ingest", "stays", "label", "profiles", "infer",
                           "validate", "lda", "sweep", "analytics"}) {
    json s = run_stage(name, cfg);
    for (const auto& p : s.at("inputs")) inputs.insert(p.get<std::string>());
    for (const auto& p : s.at("outputs")) outputs.insert(p.get<std::string>());
    summary["stages"].push_back(std::move(s));
  }
  // External inputs only: drop files produced by an earlier stage.
  json ext = json::array();
  for (const auto& p : inputs)
    if (!outputs.count(p)) ext.push_back(p);
  summary["inputs"] = std::move(ext);
  summary["outputs"] = json(outputs);
  return summary;
}

nlohmann::json run_stage(const std::string& name, const PipelineConfig& cfg) {
  using Fn = json (*)(const PipelineConfig&);
  static const std::map<std::string, Fn> stages = {
      {"synth", run_synth},       {"ingest", run_ingest},
      {"stays", run_stays},       {"label", run_label},
      {"profiles", run_profiles}, {"infer", run_infer},
      {"validate", run_validate}, {"lda", run_lda},
      {"sweep", run_sweep},       {"analytics", run_analytics},
      {"all", run_all}};
  const auto it = stages.find(name);
  if (it == stages.end()) throw std::invalid_argument("unknown subcommand: " + name);

  fs::create_directories(cfg.io.out_dir);
  json summary = it->second(cfg);

  std::ofstream(resolve_path(cfg.io, "resolved_config.json"))
      << cfg.to_json().dump(2) << "\n";
  json manifest{{"stage", name}, {"inputs", json::object()}};
  for (const auto& p : summary.at("inputs"))
    manifest["inputs"][p.get<std::string>()] = file_hash(p.get<std::string>());
  std::ofstream(resolve_path(cfg.io, "manifest.json")) << manifest.dump(2) << "\n";
  return summary;
}

}  // namespace actchain
