#include "minred/json_io.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace minred {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string json_int(const Int& v) {
    if (v.fits_slong_p()) return v.get_str();
    return "\"" + v.get_str() + "\"";
}

std::string json_form(const BinaryForm& f) {
    std::string out = "[";
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) out += ",";
        out += "\"" + f.coeffs()[i].get_str() + "\"";
    }
    return out + "]";
}

std::string json_mat(const Mat2& m) {
    return "[[" + m.a.get_str() + "," + m.b.get_str() + "],[" + m.c.get_str() + "," +
           m.d.get_str() + "]]";
}

std::string json_model(const EndoModel& f) {
    return "{\"num\":" + json_form(f.num) + ",\"den\":" + json_form(f.den) + "}";
}

BinaryForm parse_form_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("form JSON must be an array");
    std::vector<Int> cs;
    for (const auto& e : j) {
        if (e.is_string())
            cs.emplace_back(e.get<std::string>());
        else if (e.is_number_integer())
            cs.emplace_back(static_cast<long>(e.get<long long>()));
        else
            throw std::invalid_argument("form JSON entries must be integer strings");
    }
    return BinaryForm(std::move(cs));
}

EndoModel parse_model_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return EndoModel(parse_form_json(j.at("num").dump()), parse_form_json(j.at("den").dump()));
}

std::vector<Int> parse_coeff_list(const std::string& text) {
    std::vector<Int> out;
    std::string cur;
    auto flush = [&] {
        std::string t;
        for (char ch : cur)
            if (!isspace(static_cast<unsigned char>(ch))) t += ch;
        if (t.empty()) throw std::invalid_argument("empty coefficient in list");
        try {
            out.emplace_back(t);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("bad integer '" + t + "' in coefficient list");
        }
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else
            cur += ch;
    }
    flush();
    return out;
}

}  // namespace minred
