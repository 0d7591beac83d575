#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "actchain/config.hpp"
#include "actchain/types.hpp"

namespace actchain {

inline constexpr int kGapToken = kNumActivityTypes;  // empty half-hour slot
inline constexpr int kLdaVocab = kNumActivityTypes + 1;

struct ActivityDocument {
  std::string user_id;
  std::int64_t day = 0;
  std::vector<int> tokens;  // 32 half-hour words, vocabulary ids
};

// One document per user-day: 32 half-hour slots between doc_start_hour and
// doc_end_hour, each holding the activity covering the majority of the
// slot, Gap when nothing covers it. Documents with more than max_gap_frac
// Gap tokens drop. per_user_aggregate concatenates a user's days instead.
std::vector<ActivityDocument> tokenize_chains(const std::vector<ActivityChain>& chains,
                                              const LdaConfig& cfg,
                                              std::int64_t utc_offset_s);

struct TopicModel {
  int K = 0;
  int V = kLdaVocab;
  std::vector<double> alpha;                 // K
  std::vector<double> beta;                  // V
  std::vector<std::vector<double>> phi;      // K x V
  std::vector<std::vector<double>> theta;    // M x K
  std::vector<std::vector<int>> z;           // per-document assignments
  std::uint64_t seed = 0;
};

// Prior vector from a spec string: a number, "symmetric" (1/K each), or
// "asymmetric" (1/(index + sqrt(K))).
std::vector<double> resolve_prior(const std::string& spec, int dim, int topics);

// Collapsed Gibbs sampler; deterministic for a fixed seed.
TopicModel gibbs_fit(const std::vector<ActivityDocument>& docs, int K,
                     const std::vector<double>& alpha, const std::vector<double>& beta,
                     int sweeps, int burn_in, std::uint64_t seed);

struct CoherenceResult {
  std::vector<double> per_topic;
  double mean = 0;
  int skipped_pairs = 0;  // pairs with a never-occurring word
};

CoherenceResult umass_coherence(const TopicModel& model,
                                const std::vector<ActivityDocument>& docs, int top_n);

// (1/sqrt(2)) * || sqrt(p) - sqrt(q) ||_2 over two normalized distributions.
double hellinger(const std::vector<double>& p, const std::vector<double>& q);

// Pairwise topic distance matrix of a fitted model.
std::vector<std::vector<double>> topic_distance_matrix(const TopicModel& model);

struct SweepCell {
  std::string alpha;
  std::string beta;
  int K = 0;
  double coherence = 0;
  bool ok = false;
  std::string error;
};

std::vector<SweepCell> hyperparameter_sweep(const std::vector<ActivityDocument>& docs,
                                            const std::vector<std::string>& alphas,
                                            const std::vector<std::string>& betas,
                                            const std::vector<int>& topic_counts,
                                            int sweeps, int burn_in, int top_n,
                                            std::uint64_t seed);

// Document group = argmax_k theta; a user's group comes from the mean
// theta over their documents. Ties break toward the smaller k.
std::vector<int> assign_groups(const TopicModel& model);
std::map<std::string, int> assign_user_groups(const TopicModel& model,
                                              const std::vector<ActivityDocument>& docs);

}  // namespace actchain
