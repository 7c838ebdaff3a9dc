#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibrecount/fibre_product.hpp"
#include "fibrecount/records.hpp"

namespace fibrecount {

enum class Strategy { Exhaustive, Random, HillClimb };

// Leading-coefficient domain per cover.  Scaling y_i collapses leading
// coefficients to square classes, so Monic plus SquareClasses covers every
// curve up to isomorphism; All enumerates them anyway when asked.
enum class LcMode { Monic, SquareClasses, All };

Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

struct SearchConfig {
    FieldRef field;
    std::vector<int> degrees;
    Strategy strategy = Strategy::Exhaustive;
    uint64_t budget = 100000; // candidate evaluations, valid or not
    uint64_t seed = 0;
    LcMode lc_mode = LcMode::Monic;
    bool normalize = true; // pin f_1's second-highest coefficient to 0 when p does not divide d_1
    int top = 10;          // leaderboard size
    int threads = 1;
    uint64_t exhaustive_cap = 1000000000; // refuse larger exhaustive spaces
    int patience = 200;    // hill-climb: consecutive rejections before restart
};

struct RecordEntry {
    std::string field;
    int64_t q = 0;
    int g = 0;
    int64_t n = 0;
    int64_t hws = 0;
    std::vector<std::string> polys;
    std::optional<int64_t> known_lower;
    std::optional<int64_t> known_upper;
    bool improved = false;            // beats the known lower bound
    bool exceeds_known_upper = false; // impossible unless the table is wrong
    // Flattened per-position coefficient indices; the deterministic
    // tie-break key (smaller = earlier in lexicographic candidate order).
    std::vector<uint64_t> key;
};

struct SearchStats {
    uint64_t evaluated = 0; // candidates scored or rejected, counted against budget
    uint64_t valid = 0;
    uint64_t skipped = 0;   // inseparable products
    uint64_t restarts = 0;  // hill-climb restarts
    uint64_t space = 0;     // candidate space size; 0 if it overflows uint64
    double wall_seconds = 0.0;
    double throughput = 0.0; // evaluated / wall_seconds
};

struct SearchResult {
    std::vector<RecordEntry> leaderboard; // N desc, then lexicographic key
    SearchStats stats;
};

// Character rows chi(f_i(x)) for all x in enumeration order, one per cover.
struct CharCache {
    std::vector<std::vector<int8_t>> rows;
};

CharCache build_char_cache(const CurveSystem& sys);

// (N, g) from the cached rows in O(q 2^k): chi(f_I) = prod chi(f_i), with
// the infinity correction read off degree parities and leading coefficients.
// Matches point_count(sys).n exactly.
std::pair<int64_t, int> evaluate_candidate(const CurveSystem& sys, const CharCache& cache);

// Deterministic given (config, seed), including across thread counts: work
// is split into fixed-size index chunks, each chunk's generator is derived
// from (seed, chunk index), and partial leaderboards merge in chunk order.
SearchResult run_search(const SearchConfig& cfg);

// Attach known bounds from the records table and set the improvement flags.
// A row with no established lower bound counts as improved when N clears
// upper/sqrt(2), the usual entry threshold for the record tables.
void annotate_records(std::vector<RecordEntry>& entries, const RecordsTable& table);

// Sustained evaluate_candidate rate (candidates/second) on one core, using
// the random strategy's draw path.
double throughput_probe(const SearchConfig& cfg);

} // namespace fibrecount
