#include "fibrecount/json_io.hpp"

namespace fibrecount {

using nlohmann::json;

void to_json(json& j, const SubsetReport& r) {
    j = json{{"mask", r.mask},   {"d", r.d},           {"genus", r.genus},
             {"affine", r.affine}, {"infinity", r.infinity}, {"a", r.a}};
}

void from_json(const json& j, SubsetReport& r) {
    j.at("mask").get_to(r.mask);
    j.at("d").get_to(r.d);
    j.at("genus").get_to(r.genus);
    j.at("affine").get_to(r.affine);
    j.at("infinity").get_to(r.infinity);
    j.at("a").get_to(r.a);
}

void to_json(json& j, const RationalInfinity& r) {
    j = json{{"count", r.count}, {"method", r.method}};
}

void from_json(const json& j, RationalInfinity& r) {
    j.at("count").get_to(r.count);
    j.at("method").get_to(r.method);
}

void to_json(json& j, const SystemReport& r) {
    j = json{{"field", r.field},
             {"q", r.q},
             {"k", r.k},
             {"degrees", r.degrees},
             {"polys", r.polys},
             {"genus", r.genus},
             {"delta", r.delta},
             {"geometric_infinity", r.geometric_infinity},
             {"n", r.n},
             {"hws", r.hws},
             {"subsets", r.subsets}};
    if (r.affine_oracle) j["affine_oracle"] = *r.affine_oracle;
    if (r.rational_infinity) j["rational_infinity"] = *r.rational_infinity;
}

void from_json(const json& j, SystemReport& r) {
    j.at("field").get_to(r.field);
    j.at("q").get_to(r.q);
    j.at("k").get_to(r.k);
    j.at("degrees").get_to(r.degrees);
    j.at("polys").get_to(r.polys);
    j.at("genus").get_to(r.genus);
    j.at("delta").get_to(r.delta);
    j.at("geometric_infinity").get_to(r.geometric_infinity);
    j.at("n").get_to(r.n);
    j.at("hws").get_to(r.hws);
    j.at("subsets").get_to(r.subsets);
    r.affine_oracle.reset();
    if (j.contains("affine_oracle")) r.affine_oracle = j.at("affine_oracle").get<int64_t>();
    r.rational_infinity.reset();
    if (j.contains("rational_infinity")) {
        r.rational_infinity = j.at("rational_infinity").get<RationalInfinity>();
    }
}

void to_json(json& j, const IsogenyCheck& c) {
    j = json{{"m", c.m},
             {"predicted", c.predicted},
             {"affine", c.affine},
             {"defect", c.defect},
             {"ok", c.ok}};
}

void to_json(json& j, const IsogenyReport& r) {
    j = json{{"q", r.q},
             {"genus", r.genus},
             {"geometric_infinity", r.geometric_infinity},
             {"l_polynomial", r.product_coeffs},
             {"checks", r.checks},
             {"ok", r.ok}};
}

} // namespace fibrecount
