#include "actchain/lda.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numbers>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace actchain {

namespace {

// Uniform double in [0, 1) from the top 53 bits; keeps the stream layout
// independent of the standard library's distribution implementations.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_index(const std::vector<double>& weights, double total,
                 std::mt19937_64& rng) {
  const double thr = next_uniform(rng) * total;
  double cum = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cum += weights[k];
    if (cum > thr) return static_cast<int>(k);
  }
  return static_cast<int>(weights.size()) - 1;
}

}  // namespace

std::vector<ActivityDocument> tokenize_chains(const std::vector<ActivityChain>& chains,
                                              const LdaConfig& cfg,
                                              std::int64_t utc_offset_s) {
  const int n_slots = (cfg.doc_end_hour - cfg.doc_start_hour) * 2;
  std::vector<ActivityDocument> docs;

  for (const ActivityChain& chain : chains) {
    std::vector<std::array<double, kNumActivityTypes>> coverage(
        n_slots, std::array<double, kNumActivityTypes>{});
    const std::int64_t day_start = chain.day * kSecsPerDay;
    for (const StayPoint& s : chain.stays) {
      if (s.kind != StayKind::Stay || !s.activity) continue;
      const std::int64_t a = local_time(s.arrival, utc_offset_s);
      const std::int64_t b = local_time(s.departure, utc_offset_s);
      for (int slot = 0; slot < n_slots; ++slot) {
        const std::int64_t s0 = day_start + (cfg.doc_start_hour * 3600) +
                                static_cast<std::int64_t>(slot) * 1800;
        const std::int64_t s1 = s0 + 1800;
        const std::int64_t overlap = std::min(b, s1) - std::max(a, s0);
        if (overlap > 0)
          coverage[slot][static_cast<int>(*s.activity)] += static_cast<double>(overlap);
      }
    }
    ActivityDocument doc;
    doc.user_id = chain.user_id;
    doc.day = chain.day;
    doc.tokens.resize(n_slots, kGapToken);
    int gaps = 0;
    for (int slot = 0; slot < n_slots; ++slot) {
      int best = -1;
      for (int t = 0; t < kNumActivityTypes; ++t)
        if (coverage[slot][t] > 0 && (best < 0 || coverage[slot][t] > coverage[slot][best]))
          best = t;
      if (best < 0)
        ++gaps;
      else
        doc.tokens[slot] = best;
    }
    if (static_cast<double>(gaps) > cfg.max_gap_frac * n_slots) continue;
    docs.push_back(std::move(doc));
  }

  if (cfg.per_user_aggregate) {
    std::map<std::string, ActivityDocument> by_user;
    for (const ActivityDocument& d : docs) {
      auto it = by_user.find(d.user_id);
      if (it == by_user.end()) {
        by_user.emplace(d.user_id, d);
      } else {
        it->second.tokens.insert(it->second.tokens.end(), d.tokens.begin(),
                                 d.tokens.end());
      }
    }
    docs.clear();
    for (auto& [user, doc] : by_user) docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<double> resolve_prior(const std::string& spec, int dim, int topics) {
  std::vector<double> out(dim);
  if (spec == "symmetric") {
    std::fill(out.begin(), out.end(), 1.0 / topics);
  } else if (spec == "asymmetric") {
    for (int i = 0; i < dim; ++i)
      out[i] = 1.0 / (static_cast<double>(i) + std::sqrt(static_cast<double>(topics)));
  } else {
    char* end = nullptr;
    const double v = std::strtod(spec.c_str(), &end);
    if (end == spec.c_str() || *end != '\0' || v <= 0)
      throw std::invalid_argument("bad prior spec: " + spec);
    std::fill(out.begin(), out.end(), v);
  }
  return out;
}

TopicModel gibbs_fit(const std::vector<ActivityDocument>& docs, int K,
                     const std::vector<double>& alpha, const std::vector<double>& beta,
                     int sweeps, int burn_in, std::uint64_t seed) {
  if (docs.empty()) throw std::invalid_argument("gibbs_fit on an empty corpus");
  if (K < 1) throw std::invalid_argument("K >= 1 required");
  if (sweeps <= burn_in || burn_in < 0)
    throw std::invalid_argument("need sweeps > burn_in >= 0");
  if (static_cast<int>(alpha.size()) != K || static_cast<int>(beta.size()) != kLdaVocab)
    throw std::invalid_argument("prior dimension mismatch");
  for (double a : alpha)
    if (a <= 0) throw std::invalid_argument("alpha must be positive");
  for (double b : beta)
    if (b <= 0) throw std::invalid_argument("beta must be positive");

  const int M = static_cast<int>(docs.size());
  const int V = kLdaVocab;
  const double beta_sum = std::accumulate(beta.begin(), beta.end(), 0.0);
  const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);

  TopicModel model;
  model.K = K;
  model.V = V;
  model.alpha = alpha;
  model.beta = beta;
  model.seed = seed;
  model.z.resize(M);

  std::vector<std::vector<int>> n_kt(K, std::vector<int>(V, 0));
  std::vector<int> n_k(K, 0);
  std::vector<std::vector<int>> n_mk(M, std::vector<int>(K, 0));
  std::vector<int> n_m(M, 0);

  std::mt19937_64 rng(seed);
  for (int m = 0; m < M; ++m) {
    model.z[m].resize(docs[m].tokens.size());
    for (std::size_t n = 0; n < docs[m].tokens.size(); ++n) {
      const int w = docs[m].tokens[n];
      if (w < 0 || w >= V) throw std::invalid_argument("token outside vocabulary");
      const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(K));
      model.z[m][n] = k;
      ++n_kt[k][w];
      ++n_k[k];
      ++n_mk[m][k];
      ++n_m[m];
    }
  }

  std::vector<double> weights(K);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int m = 0; m < M; ++m) {
      for (std::size_t n = 0; n < docs[m].tokens.size(); ++n) {
        const int w = docs[m].tokens[n];
        const int old_k = model.z[m][n];
        --n_kt[old_k][w];
        --n_k[old_k];
        --n_mk[m][old_k];

        double total = 0;
        for (int k = 0; k < K; ++k) {
          weights[k] = (n_kt[k][w] + beta[w]) / (n_k[k] + beta_sum) *
                       (n_mk[m][k] + alpha[k]);
          total += weights[k];
        }
        const int new_k = sample_index(weights, total, rng);
        model.z[m][n] = new_k;
        ++n_kt[new_k][w];
        ++n_k[new_k];
        ++n_mk[m][new_k];
      }
    }
  }

  model.phi.assign(K, std::vector<double>(V));
  for (int k = 0; k < K; ++k)
    for (int v = 0; v < V; ++v)
      model.phi[k][v] = (n_kt[k][v] + beta[v]) / (n_k[k] + beta_sum);
  model.theta.assign(M, std::vector<double>(K));
  for (int m = 0; m < M; ++m)
    for (int k = 0; k < K; ++k)
      model.theta[m][k] = (n_mk[m][k] + alpha[k]) / (n_m[m] + alpha_sum);
  return model;
}

CoherenceResult umass_coherence(const TopicModel& model,
                                const std::vector<ActivityDocument>& docs, int top_n) {
  // Binary document occurrence and co-occurrence counts.
  const int V = model.V;
  std::vector<int> occ(V, 0);
  std::vector<std::vector<int>> cooc(V, std::vector<int>(V, 0));
  for (const ActivityDocument& d : docs) {
    std::set<int> words(d.tokens.begin(), d.tokens.end());
    for (int w : words) ++occ[w];
    for (int a : words)
      for (int b : words)
        if (a != b) ++cooc[a][b];
  }

  CoherenceResult res;
  for (int k = 0; k < model.K; ++k) {
    std::vector<int> order(V);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return model.phi[k][a] > model.phi[k][b];
    });
    order.resize(std::min<std::size_t>(order.size(), top_n));
    double score = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const int wi = order[i], wj = order[j];
        if (occ[wi] == 0) { ++res.skipped_pairs; continue; }
        score += std::log((cooc[wi][wj] + 1.0) / occ[wi]);
      }
    res.per_topic.push_back(score);
  }
  res.mean = std::accumulate(res.per_topic.begin(), res.per_topic.end(), 0.0) /
             static_cast<double>(res.per_topic.size());
  return res;
}

double hellinger(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("hellinger: length mismatch");
  double sp = 0, sq = 0;
  for (double v : p) { if (v < 0) throw std::invalid_argument("hellinger: negative entry"); sp += v; }
  for (double v : q) { if (v < 0) throw std::invalid_argument("hellinger: negative entry"); sq += v; }
  if (std::abs(sp - 1.0) > 1e-6 || std::abs(sq - 1.0) > 1e-6)
    throw std::invalid_argument("hellinger: inputs must be normalized");
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    acc += d * d;
  }
  return std::clamp(std::sqrt(acc) / std::numbers::sqrt2, 0.0, 1.0);
}

std::vector<std::vector<double>> topic_distance_matrix(const TopicModel& model) {
  std::vector<std::vector<double>> dist(model.K, std::vector<double>(model.K, 0.0));
  for (int a = 0; a < model.K; ++a)
    for (int b = a + 1; b < model.K; ++b)
      dist[a][b] = dist[b][a] = hellinger(model.phi[a], model.phi[b]);
  return dist;
}

std::vector<SweepCell> hyperparameter_sweep(const std::vector<ActivityDocument>& docs,
                                            const std::vector<std::string>& alphas,
                                            const std::vector<std::string>& betas,
                                            const std::vector<int>& topic_counts,
                                            int sweeps, int burn_in, int top_n,
                                            std::uint64_t seed) {
  if (alphas.empty() || betas.empty() || topic_counts.empty())
    throw std::invalid_argument("empty sweep grid");
  std::vector<SweepCell> cells;
  std::uint64_t cell_index = 0;
  for (const std::string& a : alphas)
    for (const std::string& b : betas)
      for (int K : topic_counts) {
        SweepCell cell;
        cell.alpha = a;
        cell.beta = b;
        cell.K = K;
        try {
          const auto model =
              gibbs_fit(docs, K, resolve_prior(a, K, K), resolve_prior(b, kLdaVocab, K),
                        sweeps, burn_in, seed + cell_index);
          cell.coherence = umass_coherence(model, docs, top_n).mean;
          cell.ok = true;
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
        cells.push_back(std::move(cell));
        ++cell_index;
      }
  return cells;
}

std::vector<int> assign_groups(const TopicModel& model) {
  std::vector<int> groups(model.theta.size(), 0);
  for (std::size_t m = 0; m < model.theta.size(); ++m) {
    int best = 0;
    for (int k = 1; k < model.K; ++k)
      if (model.theta[m][k] > model.theta[m][best]) best = k;
    groups[m] = best;
  }
  return groups;
}

std::map<std::string, int> assign_user_groups(const TopicModel& model,
                                              const std::vector<ActivityDocument>& docs) {
  std::map<std::string, std::vector<double>> mean_theta;
  std::map<std::string, int> n_docs;
  for (std::size_t m = 0; m < docs.size(); ++m) {
    auto& acc = mean_theta[docs[m].user_id];
    if (acc.empty()) acc.assign(model.K, 0.0);
    for (int k = 0; k < model.K; ++k) acc[k] += model.theta[m][k];
    ++n_docs[docs[m].user_id];
  }
  std::map<std::string, int> groups;
  for (auto& [user, acc] : mean_theta) {
    int best = 0;
    for (int k = 1; k < model.K; ++k)
      if (acc[k] > acc[best]) best = k;
    groups[user] = best;
  }
  return groups;
}

}  // namespace actchain
