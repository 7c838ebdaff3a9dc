#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibrecount/fibre_product.hpp"

namespace fibrecount {

// One row of the known-records table: the best published interval
// [lower, upper] for N_q(g).  A missing lower bound mirrors the record
// tables' convention of listing no entry when none is established.
struct RecordsRow {
    int g = 0;
    std::string q_spec;
    int64_t q = 0; // cardinality parsed from q_spec
    std::optional<int64_t> lower;
    int64_t upper = 0;
    std::string source;

    bool operator==(const RecordsRow&) const = default;
};

struct RecordsTable {
    std::vector<RecordsRow> rows;

    const RecordsRow* find(int64_t q, int g) const;
};

// CSV with header `g,q,lower,upper,source`; empty `lower` means absent.
// Malformed rows abort with the offending line number.
RecordsTable ingest_records(const std::string& path);

// A reference system with the values its source states for it, used to
// check this implementation against independently published numbers.
struct FixtureRow {
    std::string label;
    std::string table;   // which source table the row came from
    std::string field;   // field spec string
    std::string f1, f2;  // polynomial text
    int64_t a1 = 0, a2 = 0, a3 = 0; // stated subset traces
    int64_t n = 0;                  // stated point count
    int g = 0;                      // stated genus
    bool consistent = true;         // stated values satisfy n = q+1-(a1+a2+a3)
    std::string note;
};

std::vector<FixtureRow> load_fixtures(const std::string& path);

// Bundled data file locations (source-tree defaults).
std::string default_fixtures_path();
std::string default_records_path();

// Recompute every fixture row and compare.
struct VerifyRow {
    std::string label;
    std::string status; // "OK" | "MISMATCH" | "DISCREPANT"
    int64_t paper_a1 = 0, paper_a2 = 0, paper_a3 = 0, paper_n = 0;
    int paper_g = 0;
    int64_t a1 = 0, a2 = 0, a3 = 0, n = 0;
    int g = 0;
    std::string note;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    int mismatches = 0;
    int discrepant = 0;
    bool ok = false; // no consistent row mismatched
};

VerifyReport verify_paper(const std::vector<FixtureRow>& fixtures);

} // namespace fibrecount
