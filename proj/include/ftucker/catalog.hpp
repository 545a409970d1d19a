#pragma once

// Named test functions, each given as expression text.

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "funcexpr.hpp"

namespace ftucker {

struct CatalogEntry {
    std::string name;
    std::string expression;
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries{
        {"runge3", "1/(1+25*sqrt(x^2+y^2+z^2))"},
        {"expdist", "exp(-sqrt((x-1)^2+(y-1)^2+(z-1)^2))"},
        {"coshinv", "cosh(3*(x+y+z))^(-2)"},
        {"spike", "1e5/(1+1e5*(x^2+y^2+z^2))"},
        {"logmix", "log(x+y*z+exp(x*y*z)+cos(sin(exp(x*y*z))))"},
        {"separable-demo", "exp(x)*cos(y)*(z^2+1)"},
        {"degenerate-tanh", "tanh(5*(x+z))*exp(y)"},
    };
    return entries;
}

inline std::string shifted_inverse_expression(double eps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", eps);
    return "1/(x+y+z+3+" + std::string(buf) + ")";
}

/// Expression text for a catalog name. "shifted-inv(eps)" takes its
/// parameter inline, e.g. "shifted-inv(1e-3)".
inline std::optional<std::string> catalog_expression(std::string_view name) {
    for (const auto& e : catalog())
        if (e.name == name)
            return e.expression;
    constexpr std::string_view prefix = "shifted-inv(";
    if (name.starts_with(prefix) && name.ends_with(")")) {
        const std::string arg(name.substr(prefix.size(), name.size() - prefix.size() - 1));
        char* end = nullptr;
        const double eps = std::strtod(arg.c_str(), &end);
        if (!arg.empty() && end == arg.c_str() + arg.size() && eps > 0.0)
            return shifted_inverse_expression(eps);
    }
    return std::nullopt;
}

inline FuncExpr catalog_function(std::string_view name) {
    const auto text = catalog_expression(name);
    if (!text)
        throw std::invalid_argument("unknown catalog function '" + std::string(name) + "'");
    return parse_expr(*text);
}

} // namespace ftucker
