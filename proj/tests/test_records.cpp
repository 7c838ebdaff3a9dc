#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unistd.h>

#include "fibrecount/errors.hpp"
#include "fibrecount/fibre_product.hpp"
#include "fibrecount/records.hpp"
#include "naive_oracle.hpp"

using namespace fibrecount;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("fibrecount_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

} // namespace

TEST_CASE("bundled records table") {
    RecordsTable table = ingest_records(default_records_path());
    CHECK(table.rows.size() == 28);

    const RecordsRow* r17 = table.find(17, 5);
    REQUIRE(r17);
    CHECK_FALSE(r17->lower.has_value());
    CHECK(r17->upper == 53);

    const RecordsRow* r89 = table.find(89, 5);
    REQUIRE(r89);
    CHECK(r89->lower == 136);
    CHECK(r89->upper == 180);

    const RecordsRow* r289 = table.find(289, 5);
    REQUIRE(r289);
    CHECK(r289->q_spec == "17^2");
    CHECK(r289->upper == 460);

    CHECK(table.find(11, 8));
    CHECK(table.find(2, 1) == nullptr);
    CHECK(table.find(17, 6) == nullptr);
}

TEST_CASE("records ingestion rejects malformed input") {
    CHECK_THROWS_AS(ingest_records("/nonexistent/records.csv"), parse_error);

    TempFile bad_header("q,g,lower,upper,source\n5,17,,53,x\n");
    CHECK_THROWS_AS(ingest_records(bad_header.path.string()), parse_error);

    TempFile short_row("g,q,lower,upper,source\n5,17,53\n");
    CHECK_THROWS_AS(ingest_records(short_row.path.string()), parse_error);

    TempFile bad_q("g,q,lower,upper,source\n5,banana,,53,x\n");
    CHECK_THROWS_AS(ingest_records(bad_q.path.string()), parse_error);

    TempFile inverted("g,q,lower,upper,source\n5,17,60,53,x\n");
    CHECK_THROWS_AS(ingest_records(inverted.path.string()), parse_error);

    // line number in the message
    try {
        ingest_records(inverted.path.string());
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    TempFile fine("g,q,lower,upper,source\n# comment\n\n5,17,,53,x\n6,5^2,10,20,y\n");
    RecordsTable t = ingest_records(fine.path.string());
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[1].q == 25);
}

TEST_CASE("bundled fixtures load with computed consistency") {
    auto fixtures = load_fixtures(default_fixtures_path());
    CHECK(fixtures.size() == 27);

    std::set<std::string> labels, inconsistent;
    for (const auto& fx : fixtures) {
        CHECK(labels.insert(fx.label).second); // unique labels
        if (!fx.consistent) inconsistent.insert(fx.label);
    }
    CHECK(inconsistent == std::set<std::string>{"g5-q79", "g5-q89", "g7-q29"});
}

TEST_CASE("verify_paper statuses on the bundled fixtures") {
    VerifyReport rep = verify_paper(load_fixtures(default_fixtures_path()));
    CHECK(rep.rows.size() == 27);

    std::set<std::string> mismatched, discrepant;
    for (const auto& row : rep.rows) {
        if (row.status == "MISMATCH") mismatched.insert(row.label);
        if (row.status == "DISCREPANT") discrepant.insert(row.label);
    }

    // rows whose stated values disagree with each other are flagged, not failed
    CHECK(discrepant == std::set<std::string>{"g5-q79", "g5-q89", "g7-q29"});

    // rows whose printed polynomials provably do not yield the printed values;
    // the bundled data file records the recomputed numbers in its notes
    CHECK(mismatched == std::set<std::string>{"g5-q61", "g5-q73", "g5-q5^2", "g5-q13^2",
                                              "g5-q17^2", "g6-q59"});

    CHECK(rep.mismatches == 6);
    CHECK(rep.discrepant == 3);
    CHECK_FALSE(rep.ok);

    // the q=17 row reproduces exactly
    for (const auto& row : rep.rows) {
        if (row.label == "g5-q17") {
            CHECK(row.status == "OK");
            CHECK(row.a1 == -8);
            CHECK(row.a2 == -6);
            CHECK(row.a3 == -16);
            CHECK(row.n == 48);
            CHECK(row.g == 5);
        }
        if (row.label == "g5-q13^2") {
            CHECK(row.a2 == -22);
            CHECK(row.n == 296);
            CHECK(row.paper_a2 == -21);
            CHECK(row.paper_n == 295);
        }
    }
}

TEST_CASE("verify_paper on synthetic fixtures") {
    FixtureRow good;
    good.label = "good";
    good.field = "17";
    good.f1 = "1,15,16,1,1";
    good.f2 = "15,0,16,13,1";
    good.a1 = -8;
    good.a2 = -6;
    good.a3 = -16;
    good.n = 48;
    good.g = 5;
    good.consistent = true;

    FixtureRow wrong = good;
    wrong.label = "wrong";
    wrong.a1 = -7;
    wrong.n = 47;

    FixtureRow off = good;
    off.label = "off";
    off.n = 50; // stated values no longer satisfy n = q + 1 - sum
    off.consistent = false;

    VerifyReport rep = verify_paper({good, wrong, off});
    CHECK(rep.rows[0].status == "OK");
    CHECK(rep.rows[1].status == "MISMATCH");
    CHECK(rep.rows[2].status == "DISCREPANT");
    CHECK(rep.mismatches == 1);
    CHECK(rep.discrepant == 1);
    CHECK_FALSE(rep.ok);

    VerifyReport clean = verify_paper({good});
    CHECK(clean.ok);
}

TEST_CASE("mismatched fixture rows recompute identically under naive enumeration") {
    // The six rows whose stated values disagree with their printed
    // polynomials: tuple-by-tuple counting must side with the recomputation,
    // not the stated numbers.
    const std::set<std::string> disputed = {"g5-q61",   "g5-q73",   "g5-q5^2",
                                            "g5-q13^2", "g5-q17^2", "g6-q59"};
    int seen = 0;
    for (const FixtureRow& row : load_fixtures(default_fixtures_path())) {
        if (!disputed.count(row.label)) continue;
        ++seen;
        FieldRef field = FieldSpec::parse(row.field);
        CurveSystem sys(field, {Poly::parse(field, row.f1), Poly::parse(field, row.f2)});
        INFO(row.label);
        CHECK(affine_oracle(sys) == testutil::naive_affine_count(sys));
        SystemReport rep = point_count(sys);
        int64_t stated_sum = row.a1 + row.a2 + row.a3;
        int64_t computed_sum = rep.subsets[0].a + rep.subsets[1].a + rep.subsets[2].a;
        CHECK(computed_sum != stated_sum);
        CHECK(rep.n != row.n);
    }
    CHECK(seen == 6);
}

TEST_CASE("fixtures file errors carry context") {
    CHECK_THROWS_AS(load_fixtures("/nonexistent/fixtures.json"), parse_error);
    TempFile not_json("{]");
    CHECK_THROWS_AS(load_fixtures(not_json.path.string()), parse_error);
    TempFile not_array("{\"label\": \"x\"}");
    CHECK_THROWS_AS(load_fixtures(not_array.path.string()), parse_error);
    TempFile missing_key("[{\"label\": \"x\"}]");
    CHECK_THROWS_AS(load_fixtures(missing_key.path.string()), parse_error);
}
