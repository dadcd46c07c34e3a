#include "geobi/problem_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geobi/errors.hpp"

namespace geobi::io {
namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    if (!in.eof()) {
        in.clear();
        std::string leftover;
        in >> leftover;
        throw InvalidConfig("product-mix file: non-numeric token '" + leftover +
                            "' after '" + key + ":'");
    }
    if (values.empty()) {
        throw InvalidConfig("product-mix file: '" + key + ":' has no values");
    }
    return values;
}

}  // namespace

objectives::ProductMixInstance load_product_mix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path.string());

    objectives::ProductMixInstance instance;
    bool saw_profit = false;
    bool saw_rhs = false;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto colon = line.find(':', begin);
        if (colon == std::string::npos) {
            std::ostringstream msg;
            msg << "product-mix file line " << line_number << ": expected 'key: values'";
            throw InvalidConfig(msg.str());
        }
        const auto key_end = line.find_last_not_of(" \t", colon - 1);
        const std::string key = line.substr(begin, key_end - begin + 1);
        const std::string rest = line.substr(colon + 1);
        if (key == "profit") {
            if (saw_profit) throw InvalidConfig("product-mix file: duplicate 'profit:'");
            instance.profit = parse_numbers(rest, key);
            saw_profit = true;
        } else if (key == "constraint") {
            instance.constraints.push_back(parse_numbers(rest, key));
        } else if (key == "rhs") {
            if (saw_rhs) throw InvalidConfig("product-mix file: duplicate 'rhs:'");
            instance.rhs = parse_numbers(rest, key);
            saw_rhs = true;
        } else if (key == "penalty_weight") {
            const auto values = parse_numbers(rest, key);
            if (values.size() != 1 || values[0] <= 0.0) {
                throw InvalidConfig("product-mix file: 'penalty_weight:' wants one positive value");
            }
            instance.penalty_weight = values[0];
        } else if (key == "variable_cap") {
            const auto values = parse_numbers(rest, key);
            if (values.size() != 1 || values[0] <= 0.0) {
                throw InvalidConfig("product-mix file: 'variable_cap:' wants one positive value");
            }
            instance.variable_cap = values[0];
        } else {
            std::ostringstream msg;
            msg << "product-mix file line " << line_number << ": unknown key '" << key << "'";
            throw InvalidConfig(msg.str());
        }
    }
    if (!saw_profit) throw InvalidConfig("product-mix file: missing 'profit:'");
    if (!saw_rhs) throw InvalidConfig("product-mix file: missing 'rhs:'");
    if (instance.constraints.empty()) {
        throw InvalidConfig("product-mix file: needs at least one 'constraint:'");
    }
    if (instance.constraints.size() != instance.rhs.size()) {
        std::ostringstream msg;
        msg << "product-mix file: " << instance.constraints.size() << " constraint rows but "
            << instance.rhs.size() << " rhs values";
        throw InvalidConfig(msg.str());
    }
    for (std::size_t r = 0; r < instance.constraints.size(); ++r) {
        if (instance.constraints[r].size() != instance.profit.size()) {
            std::ostringstream msg;
            msg << "product-mix file: constraint row " << (r + 1) << " has "
                << instance.constraints[r].size() << " coefficients, expected "
                << instance.profit.size();
            throw InvalidConfig(msg.str());
        }
    }
    return instance;
}

}  // namespace geobi::io
