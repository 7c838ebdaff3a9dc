#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "fibrecount/errors.hpp"
#include "fibrecount/fibre_product.hpp"
#include "fibrecount/json_io.hpp"
#include "fibrecount/records.hpp"
#include "fibrecount/search.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

fibrecount::CurveSystem system_from_strings(const std::string& field_spec,
                                            const std::vector<std::string>& poly_specs) {
    fibrecount::FieldRef field = fibrecount::FieldSpec::parse(field_spec);
    std::vector<fibrecount::Poly> polys;
    polys.reserve(poly_specs.size());
    for (const auto& s : poly_specs) polys.push_back(fibrecount::Poly::parse(field, s));
    return fibrecount::make_system(field, std::move(polys));
}

// Reports cross the boundary as JSON text; the python package parses them
// into plain dicts.
std::string count_json(const std::string& field_spec, const std::vector<std::string>& poly_specs) {
    fibrecount::CurveSystem sys = system_from_strings(field_spec, poly_specs);
    fibrecount::SystemReport rep = fibrecount::point_count(sys);
    rep.affine_oracle = fibrecount::affine_oracle(sys);
    rep.rational_infinity = fibrecount::rational_infinity(sys, rep.n, *rep.affine_oracle);
    return json(rep).dump();
}

std::string verify_isogeny_json(const std::string& field_spec,
                                const std::vector<std::string>& poly_specs) {
    return json(fibrecount::verify_isogeny(system_from_strings(field_spec, poly_specs))).dump();
}

std::string search_json(const std::string& field_spec, const std::vector<int>& degrees,
                        const std::string& strategy, uint64_t budget, uint64_t seed, bool monic_only,
                        bool lc_classes, bool normalize, int top, int threads, int patience) {
    fibrecount::SearchConfig cfg;
    cfg.field = fibrecount::FieldSpec::parse(field_spec);
    cfg.degrees = degrees;
    cfg.strategy = fibrecount::parse_strategy(strategy);
    cfg.budget = budget;
    cfg.seed = seed;
    cfg.lc_mode = lc_classes ? fibrecount::LcMode::SquareClasses
                             : (monic_only ? fibrecount::LcMode::Monic : fibrecount::LcMode::All);
    cfg.normalize = normalize;
    cfg.top = top;
    cfg.threads = threads;
    cfg.patience = patience;

    fibrecount::SearchResult result = fibrecount::run_search(cfg);
    json entries = json::array();
    for (const auto& e : result.leaderboard) {
        entries.push_back(json{{"field", e.field},
                               {"q", e.q},
                               {"g", e.g},
                               {"n", e.n},
                               {"hws", e.hws},
                               {"polys", e.polys}});
    }
    json stats{{"evaluated", result.stats.evaluated},
               {"valid", result.stats.valid},
               {"skipped", result.stats.skipped},
               {"restarts", result.stats.restarts},
               {"space", result.stats.space}};
    return json{{"leaderboard", entries}, {"stats", stats}}.dump();
}

std::string verify_paper_json(const std::string& fixtures_path) {
    auto fixtures = fibrecount::load_fixtures(fixtures_path);
    fibrecount::VerifyReport rep = fibrecount::verify_paper(fixtures);
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back(json{{"label", r.label},
                            {"status", r.status},
                            {"computed", {{"a1", r.a1}, {"a2", r.a2}, {"a3", r.a3}, {"n", r.n}, {"g", r.g}}},
                            {"stated",
                             {{"a1", r.paper_a1},
                              {"a2", r.paper_a2},
                              {"a3", r.paper_a3},
                              {"n", r.paper_n},
                              {"g", r.paper_g}}}});
    }
    return json{{"rows", rows}, {"mismatches", rep.mismatches}, {"discrepant", rep.discrepant}, {"ok", rep.ok}}
        .dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "point counting for fibre products of hyperelliptic curves";

    py::register_exception<fibrecount::parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<fibrecount::validation_error>(m, "ValidationError", PyExc_ValueError);

    m.def("count_json", &count_json, py::arg("field"), py::arg("polys"));
    m.def("verify_isogeny_json", &verify_isogeny_json, py::arg("field"), py::arg("polys"));
    m.def("verify_paper_json", &verify_paper_json, py::arg("fixtures_path"));
    m.def("search_json", &search_json, py::arg("field"), py::arg("degrees"), py::arg("strategy"),
          py::arg("budget"), py::arg("seed"), py::arg("monic_only"), py::arg("lc_classes"),
          py::arg("normalize"), py::arg("top"), py::arg("threads"), py::arg("patience"));

    m.def(
        "hws_bound", [](int64_t q, int g) { return fibrecount::hws_bound(q, g); }, py::arg("q"),
        py::arg("genus"));
    m.def(
        "genus_fibre",
        [](const std::vector<int>& degrees) { return fibrecount::genus_fibre(degrees); },
        py::arg("degrees"));
    m.def(
        "geometric_infinity",
        [](const std::vector<int>& degrees) { return fibrecount::geometric_infinity(degrees); },
        py::arg("degrees"));
    m.def(
        "field_order", [](const std::string& spec) { return fibrecount::FieldSpec::parse(spec)->q(); },
        py::arg("field"));
    m.def("default_fixtures_path", &fibrecount::default_fixtures_path);
}
