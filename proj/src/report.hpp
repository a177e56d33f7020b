// Report layer: caches per-order results and renders them as JSON/CSV for
// the C API and the command-line tool. Also hosts the self-check battery
// (frozen reference values plus internal consistency rules).
#pragma once
#include <map>
#include <string>
#include <vector>

#include "graphs.hpp"
#include "matrix.hpp"

namespace rcms {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Memoizes class representatives and merged graph records per (m, d) so a
// long-lived engine (CLI process, library handle) computes each order once.
class OrderCache {
  public:
    explicit OrderCache(int threads = 1);

    void set_threads(int threads);
    int threads() const { return threads_; }

    const std::vector<ClassRep>& classes(int m, int d = 4);
    // Same, but resumes from / writes to a checkpoint file when a path is
    // given. A finished checkpoint short-circuits the computation.
    const std::vector<ClassRep>& classes_with_checkpoint(
        int m, int d, const std::string* checkpoint_path);
    const std::vector<MultiplicityRecord>& records(int m);
    // Representative counts after each augmentation stage (stage 1 .. m).
    std::vector<std::size_t> stage_sizes(int m, int d = 4);

  private:
    int threads_;
    std::map<std::pair<int, int>, std::vector<ClassRep>> classes_;
    std::map<int, std::vector<MultiplicityRecord>> records_;
};

// JSON / CSV builders. All JSON carries schema_version and the command name;
// pairing totals are serialized as decimal strings (they overflow 64 bits
// from order 6 on), everything else as numbers.
std::string count_json(OrderCache& cache, int m, int d);
std::string enumerate_json(OrderCache& cache, int m, int d,
                           const std::string* checkpoint_path = nullptr);
std::string enumerate_csv(OrderCache& cache, int m, int d,
                          const std::string* checkpoint_path = nullptr);
std::string graphs_json(OrderCache& cache, int m, bool connected_only);
std::string decompose_report_json(const std::vector<RcMatrix>& matrices);

struct VerifyOutcome {
    std::string json;
    bool all_pass = false;
};

// Runs the reference-value and consistency checks for order m (1..6);
// with_oracle additionally runs the independent matching oracle (m <= 5).
VerifyOutcome verify_order(OrderCache& cache, int m, bool with_oracle);

}  // namespace rcms
