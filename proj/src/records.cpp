#include "fibrecount/records.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fibrecount/errors.hpp"

namespace fibrecount {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

int64_t parse_int_field(const std::string& s, int line_no, const char* what) {
    int64_t v;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw parse_error("records line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
    }
    return v;
}

} // namespace

const RecordsRow* RecordsTable::find(int64_t q, int g) const {
    for (const RecordsRow& r : rows) {
        if (r.q == q && r.g == g) return &r;
    }
    return nullptr;
}

RecordsTable ingest_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open records file '" + path + "'");

    RecordsTable table;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::vector<std::string> cells = split_csv_line(stripped);
        if (!saw_header) {
            if (cells != std::vector<std::string>{"g", "q", "lower", "upper", "source"}) {
                throw parse_error("records line " + std::to_string(line_no) +
                                  ": expected header g,q,lower,upper,source");
            }
            saw_header = true;
            continue;
        }
        if (cells.size() != 5) {
            throw parse_error("records line " + std::to_string(line_no) + ": expected 5 fields, got " +
                              std::to_string(cells.size()));
        }
        RecordsRow row;
        row.g = int(parse_int_field(cells[0], line_no, "genus"));
        row.q_spec = cells[1];
        try {
            row.q = FieldSpec::parse(cells[1])->q();
        } catch (const std::exception& e) {
            throw parse_error("records line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!cells[2].empty()) row.lower = parse_int_field(cells[2], line_no, "lower bound");
        row.upper = parse_int_field(cells[3], line_no, "upper bound");
        if (row.lower && *row.lower > row.upper) {
            throw parse_error("records line " + std::to_string(line_no) + ": lower bound " +
                              std::to_string(*row.lower) + " exceeds upper bound " +
                              std::to_string(row.upper));
        }
        row.source = cells[4];
        table.rows.push_back(std::move(row));
    }
    if (!saw_header) throw parse_error("records file '" + path + "' is empty");
    return table;
}

std::string default_fixtures_path() { return std::string(FIBRECOUNT_DATA_DIR) + "/paper_fixtures.json"; }
std::string default_records_path() { return std::string(FIBRECOUNT_DATA_DIR) + "/table1_old.csv"; }

std::vector<FixtureRow> load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open fixtures file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("fixtures file '" + path + "': " + e.what());
    }
    if (!j.is_array()) throw parse_error("fixtures file '" + path + "': expected a JSON array");

    std::vector<FixtureRow> rows;
    try {
        for (const auto& item : j) {
            FixtureRow r;
            item.at("label").get_to(r.label);
            item.at("table").get_to(r.table);
            item.at("field").get_to(r.field);
            item.at("f1").get_to(r.f1);
            item.at("f2").get_to(r.f2);
            item.at("a1").get_to(r.a1);
            item.at("a2").get_to(r.a2);
            item.at("a3").get_to(r.a3);
            item.at("n").get_to(r.n);
            item.at("g").get_to(r.g);
            if (item.contains("note")) item.at("note").get_to(r.note);
            // A row is internally consistent when its stated values satisfy
            // n = q + 1 - (a1 + a2 + a3); rows that fail this are reported
            // as discrepant rather than counted as mismatches.
            int64_t q = FieldSpec::parse(r.field)->q();
            r.consistent = r.n == q + 1 - (r.a1 + r.a2 + r.a3);
            rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("fixtures file '" + path + "': " + e.what());
    }
    return rows;
}

VerifyReport verify_paper(const std::vector<FixtureRow>& fixtures) {
    VerifyReport rep;
    for (const FixtureRow& fx : fixtures) {
        VerifyRow row;
        row.label = fx.label;
        row.paper_a1 = fx.a1;
        row.paper_a2 = fx.a2;
        row.paper_a3 = fx.a3;
        row.paper_n = fx.n;
        row.paper_g = fx.g;
        row.note = fx.note;

        FieldRef field = FieldSpec::parse(fx.field);
        std::vector<Poly> polys{Poly::parse(field, fx.f1), Poly::parse(field, fx.f2)};
        SystemReport sys = point_count(make_system(field, std::move(polys)));
        // k = 2 throughout the source tables: masks 1, 2, 3.
        row.a1 = sys.subsets[0].a;
        row.a2 = sys.subsets[1].a;
        row.a3 = sys.subsets[2].a;
        row.n = sys.n;
        row.g = sys.genus;

        bool match = row.a1 == fx.a1 && row.a2 == fx.a2 && row.a3 == fx.a3 && row.n == fx.n &&
                     row.g == fx.g;
        if (!fx.consistent) {
            row.status = "DISCREPANT";
            ++rep.discrepant;
        } else if (match) {
            row.status = "OK";
        } else {
            row.status = "MISMATCH";
            ++rep.mismatches;
        }
        rep.rows.push_back(std::move(row));
    }
    rep.ok = rep.mismatches == 0;
    return rep;
}

} // namespace fibrecount
