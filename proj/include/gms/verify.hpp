#pragma once

#include "gms/json_io.hpp"

namespace gms {

/// One verified (or explored) instance of a correspondence suite.
/// status "verified" means both sides came from exact, complete
/// procedures; "explored-lower-bound" marks cases whose maximizing side
/// is only sampled; "counterexample" terminates the suite.
struct TheoremCase {
  std::string theorem_id;
  Json instance;  // self-contained reproduction data
  std::string graph_side;
  std::string space_side;
  std::string status;
};

struct CounterexampleError : std::runtime_error {
  TheoremCase found;
  explicit CounterexampleError(TheoremCase c)
      : std::runtime_error("counterexample in suite " + c.theorem_id),
        found(std::move(c)) {}
};

struct VerifyOptions {
  int n_max = 3;
  Field field = Field::fp(2);
  std::uint64_t seed = 1;
  /// Enumerate digraphs without loops (used by the acyclic-size and
  /// arc-connectivity suites).
  bool loopless_only = false;
  /// Collapse the sampling halves of the induced suites to
  /// isomorphism-class representatives (the certification halves always
  /// run on the raw enumeration).
  bool dedup_classes = true;
  int samples = 10000;       // random-unitary samples per induced instance
  double tolerance = 1e-6;   // sampling tolerance
  int threads = 0;           // 0 = GMS_THREADS or hardware default
};

struct SuiteReport {
  std::vector<TheoremCase> cases;
  int verified = 0;
  int explored = 0;
  int failed = 0;

  void add(TheoremCase c);
};

Json case_to_json(const TheoremCase& c);
Json report_to_json(const SuiteReport& r);
std::string report_to_jsonl(const SuiteReport& r);

/// Known suite identifiers:
///   T1.3 matching-vs-max-rank, T1.4 bounded-rank dimension,
///   T1.5 bounded-rank order, T1.6/4.2 walk-length vs nil indices,
///   T4.4 cycle covers vs zero eigenvalues, T1.7 acyclic-size vs nil
///   dimension, T1.11 induced acyclic order, T1.8/5.1 components vs
///   composition length, T1.9 non-strong size vs reducible dimension,
///   T1.10 induced non-strong order, T1.13 isomorphism/conjugacy/
///   congruence, T1.14 transitivity, C1.16 bounded-eigenvalue explorer,
///   EX-CONG, EX-CONJ, A.1 cycle-to-matching reduction.
std::vector<std::string> known_theorem_ids();

SuiteReport verify_theorem(const std::string& theorem_id,
                           const VerifyOptions& options);

/// Orbit branch plus (for n <= 3 over F_3) exhaustive conjugacy and
/// congruence stabilizers with the irreducibility test on their spans.
TheoremCase verify_transitivity(const Digraph& g, const Field& f);

/// Bounded-eigenvalue inherited-correspondence explorer over F_2.
SuiteReport explore_atkinson(int n_max, const VerifyOptions& options);

/// The two counterexample instances blocking the inherited congruence
/// correspondence and the embedding version of conjugacy.
SuiteReport reproduce_counterexamples();

/// Randomized constructive-extraction harness: relabeled digraph pairs
/// with monomial conjugators/congruators; every extraction must pass the
/// arc-exact check.
SuiteReport extraction_trials(int pairs, int n_max, const Field& f,
                              std::uint64_t seed);

/// All arc masks of digraphs on n vertices (optionally loopless), in
/// numeric order; with dedup, lexicographically least representatives of
/// the vertex-permutation classes.
std::vector<std::uint64_t> digraph_masks(int n, bool loopless, bool dedup);

/// Enumerates GL(n, p) (all invertible matrices); p^(n^2) <= 2^26.
void enumerate_gl(const Field& f, int n,
                  const std::function<bool(const Matrix&)>& visit);

int resolve_thread_count(int requested);

}  // namespace gms
