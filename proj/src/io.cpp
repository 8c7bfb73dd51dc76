#include "frobrec/io.hpp"

#include <json.hpp>

#include <sstream>

namespace frobrec {

const char* const kVersion = "0.1.0";

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json alpha_json(const Orbifold& A, const MultiIndex& alpha) {
    ordered_json obj = ordered_json::object();
    for (int t = 0; t < alpha.size(); ++t) {
        if (!alpha[t]) continue;
        obj[std::to_string(A.leg_of(t) + 1) + "," + std::to_string(A.j_of(t))] = alpha[t];
    }
    return obj;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string serialize(const Potential& P, Format format, bool unverified) {
    const Orbifold& A = P.orbifold();
    auto items = P.sorted_nonzero();

    if (format == Format::Json) {
        ordered_json j;
        j["A"] = {A.a(0), A.a(1), A.a(2)};
        j["mu"] = A.mu();
        j["chi"] = rat_str(A.chi());
        j["max_m"] = P.requested_max_m();
        if (P.max_len()) j["max_len"] = *P.max_len();
        if (unverified) j["unverified"] = true;
        ordered_json coeffs = ordered_json::array();
        for (const auto& [key, value] : items) {
            ordered_json row;
            row["alpha"] = alpha_json(A, key.alpha);
            row["m"] = key.m;
            row["c"] = rat_str(value);
            coeffs.push_back(std::move(row));
        }
        j["coefficients"] = std::move(coeffs);
        return j.dump() + "\n";
    }

    if (format == Format::Csv) {
        std::ostringstream out;
        if (unverified) out << "# unverified\n";
        out << "alpha,m,c\n";
        for (const auto& [key, value] : items)
            out << csv_quote(key.alpha.str(A)) << "," << key.m << "," << csv_quote(rat_str(value))
                << "\n";
        return out.str();
    }

    std::ostringstream out;
    out << "A = (" << A.a(0) << "," << A.a(1) << "," << A.a(2) << ")  mu = " << A.mu()
        << "  chi = " << rat_str(A.chi()) << "  max_m = " << P.requested_max_m() << "\n";
    if (unverified) out << "unverified: true\n";
    for (const auto& [key, value] : items)
        out << "c({" << key.alpha.str(A) << "}, " << key.m << ") = " << rat_str(value) << "\n";
    return out.str();
}

Potential deserialize(const std::string& bytes) {
    ordered_json j;
    try {
        j = ordered_json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("parse error: ") + e.what());
    }
    try {
        auto a = j.at("A");
        Orbifold A(a.at(0).get<int>(), a.at(1).get<int>(), a.at(2).get<int>());
        if (j.at("mu").get<int>() != A.mu()) throw std::runtime_error("mu mismatch");
        if (rat_parse(j.at("chi").get<std::string>()) != A.chi())
            throw std::runtime_error("chi mismatch");
        Potential P(A);
        std::optional<int> max_len;
        if (j.contains("max_len")) max_len = j.at("max_len").get<int>();
        P.set_bounds(j.at("max_m").get<int>(), max_len);
        for (const auto& row : j.at("coefficients")) {
            MultiIndex alpha(A.num_twisted());
            for (const auto& [label, exp] : row.at("alpha").items()) {
                auto comma = label.find(',');
                if (comma == std::string::npos)
                    throw std::runtime_error("bad alpha label: " + label);
                int leg = std::stoi(label.substr(0, comma));
                int jj = std::stoi(label.substr(comma + 1));
                int t = A.twisted_lookup(leg - 1, jj);
                if (t < 0) throw std::runtime_error("alpha label out of range: " + label);
                alpha[t] = static_cast<uint16_t>(exp.get<int>());
            }
            CoeffKey key{alpha, row.at("m").get<int>()};
            if (!P.admissible(key))
                throw std::runtime_error("inadmissible coefficient key " + key_str(A, key));
            P.set(key, rat_parse(row.at("c").get<std::string>()));
        }
        P.mark_complete();
        return P;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed potential document: ") + e.what());
    }
}

std::string cache_file_name(const Orbifold& A, int max_m, std::optional<int> max_len) {
    std::ostringstream name;
    name << "frobrec-" << A.a(0) << "-" << A.a(1) << "-" << A.a(2) << "-m" << max_m;
    if (max_len) name << "-len" << *max_len;
    name << "-v" << kVersion << ".json";
    return name.str();
}

}  // namespace frobrec
