#include "actchain/synthgen.hpp"

#include "actchain/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace actchain {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal(std::mt19937_64& rng, double mean, double sd) {
  // Box-Muller, one draw per call.
  const double u1 = std::max(uniform(rng), 1e-12);
  const double u2 = uniform(rng);
  return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
}

double exponential(std::mt19937_64& rng, double rate) {
  return -std::log(std::max(1.0 - uniform(rng), 1e-300)) / rate;
}

int discrete(std::mt19937_64& rng, const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) total += w;
  const double thr = uniform(rng) * total;
  double cum = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (cum > thr) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

struct Peak { double hour, sd, weight; };

// Arrival mixture per activity type: truncated gaussian rush peaks plus a
// flat "open hours" component, so each type has hard quiet hours and a
// steep opening edge.
struct TypeHabits {
  std::vector<Peak> peaks;
  double open_lo, open_hi, open_weight;
  double mean_duration_min;
};

const TypeHabits& habits(ActivityType t) {
  static const TypeHabits shopping{
      {{15.5, 1.0, 0.4}, {19.5, 0.8, 0.4}}, 9.5, 21.0, 0.2, 80};
  static const TypeHabits daily{{{10.0, 1.2, 0.4}, {15.0, 1.5, 0.4}}, 9.0, 18.0, 0.2, 45};
  static const TypeHabits transport{{{8.5, 0.8, 0.4}, {18.0, 1.0, 0.4}}, 7.5, 21.0, 0.2, 25};
  static const TypeHabits drinkeat{
      {{8.0, 0.5, 0.2}, {12.3, 0.7, 0.3}, {19.0, 0.8, 0.3}}, 9.5, 21.0, 0.2, 55};
  static const TypeHabits leisure{{{14.0, 1.5, 0.3}, {19.5, 1.0, 0.5}}, 10.0, 21.5, 0.2, 100};
  static const TypeHabits education{{{9.0, 0.7, 0.5}, {13.5, 1.0, 0.3}}, 8.0, 17.0, 0.2, 180};
  static const TypeHabits other{{{13.0, 2.5, 1.0}}, 9.0, 21.0, 0.3, 60};
  switch (t) {
    case ActivityType::Shopping: return shopping;
    case ActivityType::DailyLife: return daily;
    case ActivityType::Transport: return transport;
    case ActivityType::DrinkEat: return drinkeat;
    case ActivityType::LeisureSport: return leisure;
    case ActivityType::Education: return education;
    default: return other;
  }
}

double sample_arrival_hour(std::mt19937_64& rng, ActivityType t, double lo, double hi) {
  const auto& h = habits(t);
  std::vector<double> w;
  for (const Peak& p : h.peaks) w.push_back(p.weight);
  w.push_back(h.open_weight);
  for (int attempt = 0; attempt < 32; ++attempt) {
    const int pick = discrete(rng, w);
    double hour;
    if (pick == static_cast<int>(h.peaks.size())) {
      hour = h.open_lo + uniform(rng) * (h.open_hi - h.open_lo);
    } else {
      const Peak& p = h.peaks[pick];
      hour = normal(rng, p.hour, p.sd);
      // Truncate at 2.5 sigma so each type has hard quiet hours.
      if (std::abs(hour - p.hour) > 2.5 * p.sd) continue;
    }
    if (hour >= lo && hour <= hi) return hour;
  }
  return std::clamp(h.peaks.front().hour, lo, hi);
}

double sample_duration_s(std::mt19937_64& rng, ActivityType t) {
  const double mean_min = habits(t).mean_duration_min;
  const double v = std::exp(normal(rng, std::log(mean_min), 0.4));
  return std::clamp(v, 20.0, 240.0) * 60.0;
}

// Raw category vocabulary per type; the default mapping tables cover it.
const std::vector<std::string>& raw_categories(ActivityType t) {
  static const std::vector<std::string> shopping = {"mall", "store"};
  static const std::vector<std::string> daily = {"bank", "hospital"};
  static const std::vector<std::string> transport = {"metro_station", "bus_station"};
  static const std::vector<std::string> drinkeat = {"restaurant", "cafe"};
  static const std::vector<std::string> leisure = {"park", "gym"};
  static const std::vector<std::string> education = {"school", "university"};
  static const std::vector<std::string> other = {"building", "misc"};
  static const std::vector<std::string> home = {"residential"};
  static const std::vector<std::string> work = {"office"};
  switch (t) {
    case ActivityType::Shopping: return shopping;
    case ActivityType::DailyLife: return daily;
    case ActivityType::Transport: return transport;
    case ActivityType::DrinkEat: return drinkeat;
    case ActivityType::LeisureSport: return leisure;
    case ActivityType::Education: return education;
    case ActivityType::Home: return home;
    case ActivityType::Work: return work;
    default: return other;
  }
}

ProjectedPoint random_disc_point(std::mt19937_64& rng, double radius_m) {
  const double r = radius_m * std::sqrt(uniform(rng));
  const double a = 2.0 * std::numbers::pi * uniform(rng);
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

std::int64_t synth_start_day() {
  return days_from_civil(2014, 1, 6);  // a Monday
}

SynthWorld generate_world(const SynthConfig& cfg) {
  if (cfg.n_stations <= 0) throw std::invalid_argument("world needs stations");
  SynthWorld world;
  world.proj = Projection(cfg.origin_lon, cfg.origin_lat);
  std::mt19937_64 rng(splitmix64(cfg.seed));
  const double radius_m = cfg.disc_radius_km * 1000.0;

  char buf[32];
  for (int i = 0; i < cfg.n_stations; ++i) {
    BaseStation s;
    std::snprintf(buf, sizeof(buf), "S%05d", i);
    s.station_id = buf;
    s.pos = random_disc_point(rng, radius_m);
    world.proj.unproject(s.pos, s.lon, s.lat);
    world.stations.push_back(std::move(s));
  }

  // Facilities are isolated: one per anchor station, anchors at least
  // 600 m apart. Keeps a station's catchment to a single facility and
  // keeps the 300 m place linkage from chaining two facilities together.
  std::vector<int> order(world.stations.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng() % i]);
  std::vector<int> anchors;
  for (int idx : order) {
    bool ok = true;
    for (int a : anchors)
      if (euclidean_distance(world.stations[idx].pos, world.stations[a].pos) < 600.0) {
        ok = false;
        break;
      }
    if (ok) anchors.push_back(idx);
  }
  for (int idx : order) {  // top up if the packing ran out
    if (static_cast<int>(anchors.size()) >= 7 * cfg.pois_per_type) break;
    if (std::find(anchors.begin(), anchors.end(), idx) == anchors.end())
      anchors.push_back(idx);
  }

  int poi_index = 0;
  for (ActivityType t : kInferableTypes) {
    for (int i = 0; i < cfg.pois_per_type; ++i) {
      POI p;
      std::snprintf(buf, sizeof(buf), "P%06d", poi_index++);
      p.poi_id = buf;
      const BaseStation& anchor =
          world.stations[anchors[static_cast<std::size_t>(poi_index - 1) %
                                 anchors.size()]];
      const ProjectedPoint off = random_disc_point(rng, 60.0);
      p.pos = {anchor.pos.x + off.x, anchor.pos.y + off.y};
      world.proj.unproject(p.pos, p.lon, p.lat);
      const auto& cats = raw_categories(t);
      p.category = cats[i % cats.size()];
      p.type = t;
      world.pois.push_back(std::move(p));
    }
  }
  return world;
}

std::vector<AgentTruth> generate_agents(const SynthConfig& cfg, const SynthWorld& world,
                                        std::int64_t utc_offset_s) {
  if (world.stations.empty()) throw std::invalid_argument("world needs stations");
  const double radius_m = cfg.disc_radius_km * 1000.0;
  const double speed = cfg.travel_speed_kmh / 3.6;  // m/s
  const std::int64_t day0 = synth_start_day();

  // Per-type POI shortlists for activity destination choice.
  std::array<std::vector<int>, 7> pois_of_type;
  for (int i = 0; i < static_cast<int>(world.pois.size()); ++i)
    pois_of_type[inferable_index(world.pois[i].type)].push_back(i);

  std::vector<AgentTruth> agents;
  char buf[32];
  for (int a = 0; a < cfg.n_agents; ++a) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(a) + 1)));
    AgentTruth agent;
    std::snprintf(buf, sizeof(buf), "U%05d", a);
    agent.user_id = buf;
    agent.home = random_disc_point(rng, radius_m * 0.9);
    const bool commuter = uniform(rng) < cfg.commuter_fraction;
    if (commuter) {
      for (int attempt = 0; attempt < 64; ++attempt) {
        const ProjectedPoint w = random_disc_point(rng, radius_m * 0.9);
        if (euclidean_distance(w, agent.home) >= 2000.0) { agent.work = w; break; }
      }
      if (!agent.work) agent.work = ProjectedPoint{agent.home.x + 2500.0, agent.home.y};
    }
    agent.archetype = cfg.archetype_mix.empty() ? 0 : discrete(rng, cfg.archetype_mix);

    auto pick_poi = [&](ActivityType t) {
      const auto& pool = pois_of_type[inferable_index(t)];
      if (pool.empty()) return -1;
      // Prefer facilities within reach of home.
      std::vector<int> near;
      for (int idx : pool)
        if (euclidean_distance(world.pois[idx].pos, agent.home) <= 4000.0)
          near.push_back(idx);
      const auto& from = near.empty() ? pool : near;
      return from[rng() % static_cast<std::uint64_t>(from.size())];
    };

    // Planned destinations per day: (desired local arrival s, kind, poi, type, duration)
    struct Plan {
      double arrival_s;
      ScheduleEntry::Kind kind;
      int poi;
      ActivityType type;
      double duration_s;
    };

    std::vector<Plan> plans;
    for (int d = 0; d < cfg.study_days; ++d) {
      const std::int64_t day = day0 + d;
      const double base = static_cast<double>(day) * kSecsPerDay;
      const bool weekend = is_weekend_day(day);

      std::vector<Plan> today;
      if (!weekend && commuter) {
        if (uniform(rng) < 0.25) {
          const ActivityType t = ActivityType::DrinkEat;
          today.push_back({base + 7.6 * 3600.0, ScheduleEntry::Kind::Activity,
                           pick_poi(t), t, std::clamp(normal(rng, 1800.0, 600.0), 1200.0, 3000.0)});
        }
        const double work_arr = std::clamp(normal(rng, 8.75, 0.3), 7.5, 10.0);
        const double work_dur = std::clamp(normal(rng, 8.5, 0.6), 7.0, 10.0);
        today.push_back({base + work_arr * 3600.0, ScheduleEntry::Kind::Work, -1,
                         ActivityType::Work, work_dur * 3600.0});
        const double p_evening = agent.archetype == 1 ? 0.7 : (agent.archetype == 2 ? 0.2 : 0.35);
        if (uniform(rng) < p_evening) {
          static const std::vector<double> w = {0.35, 0.35, 0.30};
          static const ActivityType opts[3] = {ActivityType::DrinkEat,
                                               ActivityType::Shopping,
                                               ActivityType::LeisureSport};
          const ActivityType t = opts[discrete(rng, w)];
          const double arr = sample_arrival_hour(rng, t, work_arr + work_dur + 0.3, 21.0);
          today.push_back({base + arr * 3600.0, ScheduleEntry::Kind::Activity,
                           pick_poi(t), t, sample_duration_s(rng, t)});
        }
      } else if (!weekend) {
        const int n_act = agent.archetype == 2 ? (uniform(rng) < 0.7 ? 1 : 2)
                                               : (uniform(rng) < 0.5 ? 2 : 3);
        static const std::vector<double> w = {0.18, 0.14, 0.08, 0.22, 0.16, 0.12, 0.10};
        for (int i = 0; i < n_act; ++i) {
          const ActivityType t = kInferableTypes[discrete(rng, w)];
          const double arr = sample_arrival_hour(rng, t, 8.5, 20.5);
          today.push_back({base + arr * 3600.0, ScheduleEntry::Kind::Activity,
                           pick_poi(t), t, sample_duration_s(rng, t)});
        }
      } else if (uniform(rng) < 0.5) {
        const ActivityType t =
            uniform(rng) < 0.5 ? ActivityType::Shopping : ActivityType::LeisureSport;
        const double arr = sample_arrival_hour(rng, t, 10.0, 19.0);
        today.push_back({base + arr * 3600.0, ScheduleEntry::Kind::Activity,
                         pick_poi(t), t, sample_duration_s(rng, t)});
      }

      std::sort(today.begin(), today.end(),
                [](const Plan& x, const Plan& y) { return x.arrival_s < y.arrival_s; });
      // Return home between well-separated activities and always at day end.
      std::vector<Plan> withhome;
      for (std::size_t i = 0; i < today.size(); ++i) {
        withhome.push_back(today[i]);
        const double end_i = today[i].arrival_s + today[i].duration_s;
        const bool last = i + 1 == today.size();
        if (!last && today[i + 1].arrival_s - end_i > 2.5 * 3600.0)
          withhome.push_back({end_i + 300.0, ScheduleEntry::Kind::Home, -1,
                              ActivityType::Home, 0.0});
        if (last)
          withhome.push_back({end_i + 300.0, ScheduleEntry::Kind::Home, -1,
                              ActivityType::Home, 0.0});
      }
      plans.insert(plans.end(), withhome.begin(), withhome.end());
    }

    // Build the continuous dwell timeline with travel legs.
    const double study_start =
        static_cast<double>(day0) * kSecsPerDay;
    const double study_end =
        static_cast<double>(day0 + cfg.study_days) * kSecsPerDay;
    auto to_utc = [&](double local_s) {
      return static_cast<std::int64_t>(std::llround(local_s)) - utc_offset_s;
    };

    ScheduleEntry cur;
    cur.kind = ScheduleEntry::Kind::Home;
    cur.type = ActivityType::Home;
    cur.pos = agent.home;
    double cur_arrival = study_start;
    double cur_min_end = study_start;  // planned activity end; home is open

    for (const Plan& plan : plans) {
      if (plan.kind == ScheduleEntry::Kind::Activity && plan.poi < 0) continue;
      ProjectedPoint dest = agent.home;
      if (plan.kind == ScheduleEntry::Kind::Work)
        dest = *agent.work;
      else if (plan.kind == ScheduleEntry::Kind::Activity)
        dest = world.pois[plan.poi].pos;
      if (dest == cur.pos) continue;

      const double travel = euclidean_distance(cur.pos, dest) / speed;
      const double departure =
          std::max({plan.arrival_s - travel, cur_min_end, cur_arrival + 300.0});
      const double arrival = departure + travel;
      if (arrival + 60.0 >= study_end) break;

      cur.arrival = to_utc(cur_arrival);
      cur.departure = to_utc(departure);
      agent.dwells.push_back(cur);

      cur = ScheduleEntry{};
      cur.kind = plan.kind;
      cur.poi = plan.poi;
      cur.type = plan.type;
      cur.pos = dest;
      cur_arrival = arrival;
      cur_min_end = arrival + plan.duration_s;
    }
    cur.arrival = to_utc(cur_arrival);
    cur.departure = to_utc(study_end);
    agent.dwells.push_back(cur);
    agents.push_back(std::move(agent));
  }
  return agents;
}

namespace {

// Two nearest stations by brute force; deterministic tie-break by index
// (stations are id-ordered at generation time).
std::pair<int, int> two_nearest(const std::vector<BaseStation>& stations,
                                const ProjectedPoint& p) {
  int best = -1, second = -1;
  double bd = std::numeric_limits<double>::infinity();
  double sd = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(stations.size()); ++i) {
    const double dx = stations[i].pos.x - p.x, dy = stations[i].pos.y - p.y;
    const double d = dx * dx + dy * dy;
    if (d < bd) {
      second = best; sd = bd;
      best = i; bd = d;
    } else if (d < sd) {
      second = i; sd = d;
    }
  }
  return {best, second};
}

ProjectedPoint position_at(const AgentTruth& agent, std::int64_t t) {
  for (std::size_t i = 0; i < agent.dwells.size(); ++i) {
    const auto& d = agent.dwells[i];
    if (t < d.arrival) {
      // traveling from the previous dwell
      if (i == 0) return d.pos;
      const auto& prev = agent.dwells[i - 1];
      const double span = static_cast<double>(d.arrival - prev.departure);
      if (span <= 0) return d.pos;
      const double f = static_cast<double>(t - prev.departure) / span;
      return {prev.pos.x + f * (d.pos.x - prev.pos.x),
              prev.pos.y + f * (d.pos.y - prev.pos.y)};
    }
    if (t <= d.departure) return d.pos;
  }
  return agent.dwells.back().pos;
}

}  // namespace

void emit_xdr(const std::vector<AgentTruth>& agents, const SynthWorld& world,
              const SynthConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(10);
  out << "user_id,timestamp,lon,lat,station_id\n";
  if (cfg.record_rate_per_day <= 0) return;

  for (std::size_t a = 0; a < agents.size(); ++a) {
    const AgentTruth& agent = agents[a];
    std::mt19937_64 rng(
        splitmix64(cfg.seed ^ splitmix64(0xabcdef12345ULL + a)));
    std::vector<std::int64_t> times;
    // Handoff records at every dwell boundary.
    for (const auto& d : agent.dwells) {
      times.push_back(d.arrival);
      if (d.departure > d.arrival) times.push_back(d.departure);
    }
    const std::int64_t t0 = agent.dwells.front().arrival;
    const std::int64_t t1 = agent.dwells.back().departure;
    const double days = static_cast<double>(t1 - t0) / kSecsPerDay;
    const double want = cfg.record_rate_per_day * days;
    const double fill = std::max(0.0, want - static_cast<double>(times.size()));
    if (fill > 0) {
      const double rate = fill / static_cast<double>(t1 - t0);
      double t = static_cast<double>(t0);
      while (true) {
        t += exponential(rng, rate);
        if (t >= static_cast<double>(t1)) break;
        times.push_back(static_cast<std::int64_t>(t));
      }
    }
    std::sort(times.begin(), times.end());

    for (std::int64_t t : times) {
      const ProjectedPoint p = position_at(agent, t);
      auto [best, second] = two_nearest(world.stations, p);
      int pick = best;
      if (second >= 0 && uniform(rng) < cfg.reassign_prob) pick = second;
      const BaseStation& s = world.stations[pick];
      out << agent.user_id << ',' << t << ',' << s.lon << ',' << s.lat << ','
          << s.station_id << '\n';
    }
  }
}

void emit_checkins(const std::vector<AgentTruth>& agents, const SynthWorld& world,
                   const SynthConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "user_id,timestamp,category\n";
  if (cfg.checkin_rate_per_hour <= 0) return;
  const double rate_s = cfg.checkin_rate_per_hour / 3600.0;
  for (std::size_t a = 0; a < agents.size(); ++a) {
    const AgentTruth& agent = agents[a];
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(0x5eed0c4ec41ULL + a)));
    for (const auto& d : agent.dwells) {
      if (d.kind == ScheduleEntry::Kind::Home) continue;
      const std::string& cat = d.kind == ScheduleEntry::Kind::Work
                                   ? raw_categories(ActivityType::Work)[0]
                                   : world.pois[d.poi].category;
      // Poisson stream over the dwell: venue visits produce a variable
      // number of posts, proportional to time spent in expectation.
      double t = static_cast<double>(d.arrival) + exponential(rng, rate_s);
      while (t < static_cast<double>(d.departure)) {
        out << agent.user_id << ',' << static_cast<std::int64_t>(t) << ',' << cat
            << '\n';
        t += exponential(rng, rate_s);
      }
    }
  }
}

void emit_stations(const SynthWorld& world, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(10);
  out << "station_id,lon,lat\n";
  for (const auto& s : world.stations)
    out << s.station_id << ',' << s.lon << ',' << s.lat << '\n';
}

void emit_pois(const SynthWorld& world, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(10);
  out << "poi_id,lon,lat,category\n";
  for (const auto& p : world.pois)
    out << p.poi_id << ',' << p.lon << ',' << p.lat << ',' << p.category << '\n';
}

void emit_truth(const std::vector<AgentTruth>& agents, const SynthWorld& world,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(10);
  for (const AgentTruth& agent : agents) {
    out << "{\"user_id\":\"" << agent.user_id << "\",\"archetype\":" << agent.archetype
        << ",\"home\":{\"x\":" << agent.home.x << ",\"y\":" << agent.home.y << "}";
    if (agent.work)
      out << ",\"work\":{\"x\":" << agent.work->x << ",\"y\":" << agent.work->y << "}";
    else
      out << ",\"work\":null";
    out << ",\"dwells\":[";
    for (std::size_t i = 0; i < agent.dwells.size(); ++i) {
      const auto& d = agent.dwells[i];
      if (i) out << ',';
      const char* kind = d.kind == ScheduleEntry::Kind::Home
                             ? "home"
                             : d.kind == ScheduleEntry::Kind::Work ? "work" : "activity";
      out << "{\"kind\":\"" << kind << "\",\"type\":\"" << to_string(d.type)
          << "\",\"arrival\":" << d.arrival << ",\"departure\":" << d.departure
          << ",\"x\":" << d.pos.x << ",\"y\":" << d.pos.y;
      if (d.poi >= 0) out << ",\"poi_id\":\"" << world.pois[d.poi].poi_id << "\"";
      out << "}";
    }
    out << "]}\n";
  }
}

void write_default_category_map(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "raw_category,activity_type\n"
         "mall,Shopping\nstore,Shopping\nbookstore,Shopping\ncar_service,Shopping\n"
         "bank,DailyLife\nhospital,DailyLife\ngovernment,DailyLife\nchurch,DailyLife\n"
         "metro_station,Transport\nbus_station,Transport\nairport,Transport\n"
         "train_station,Transport\n"
         "restaurant,DrinkEat\ncafe,DrinkEat\ndiner,DrinkEat\nbakery,DrinkEat\n"
         "park,LeisureSport\ngym,LeisureSport\nbar,LeisureSport\nhotel,LeisureSport\n"
         "movie_theater,LeisureSport\n"
         "school,Education\nuniversity,Education\nlibrary,Education\ncollege,Education\n"
         "residential,Home\nhome_private,Home\n"
         "office,Work\nfactory,Work\nprofessional_places,Work\n"
         "building,Other\nmisc,Other\ncity,Other\nevent_space,Other\n";
}

void write_default_profession_map(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  // 14 occupation groups.
  out << "raw_category,profession\n"
         "mall,Sales\nstore,Sales\nbookstore,Sales\ncar_service,Sales\n"
         "bank,Finance\ngovernment,SocialPublic\nchurch,SocialPublic\n"
         "hospital,Healthcare\n"
         "metro_station,Logistics\nbus_station,Logistics\nairport,Logistics\n"
         "train_station,Logistics\n"
         "restaurant,Catering\ncafe,Catering\ndiner,Catering\nbakery,Catering\n"
         "park,Culture\ngym,Culture\nbar,Culture\nhotel,Tourism\nmovie_theater,Culture\n"
         "school,Education\nuniversity,Education\nlibrary,Education\ncollege,Education\n"
         "residential,RealEstate\nhome_private,RealEstate\n"
         "office,IT\nfactory,Manufacture\nprofessional_places,Business\n"
         "building,Manufacture\nmisc,Other\ncity,Other\nevent_space,Other\n";
}

}  // namespace actchain
