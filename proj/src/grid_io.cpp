#include "hvdc/grid_io.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "hvdc/errors.hpp"

namespace hvdc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

const json& get_key(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing key \"" + std::string(key) + "\"");
    return *it;
}

double get_number(const json& obj, const std::string& where, const char* key) {
    const json& value = get_key(obj, where, key);
    if (!value.is_number()) fail(where, "key \"" + std::string(key) + "\" must be a number");
    return value.get<double>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
    const json& value = get_key(obj, where, key);
    if (!value.is_string()) fail(where, "key \"" + std::string(key) + "\" must be a string");
    return value.get<std::string>();
}

const json& get_object(const json& obj, const std::string& where, const char* key) {
    const json& value = get_key(obj, where, key);
    if (!value.is_object()) fail(where, "key \"" + std::string(key) + "\" must be an object");
    return value;
}

const json& get_array(const json& obj, const std::string& where, const char* key) {
    const json& value = get_key(obj, where, key);
    if (!value.is_array()) fail(where, "key \"" + std::string(key) + "\" must be an array");
    return value;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed, bool lax) {
    if (lax) return;
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) fail(where, "unknown key \"" + item.key() + "\" (pass --lax to ignore)");
    }
}

ZipParams parse_zip(const json& obj, const std::string& where, bool lax) {
    if (!obj.is_object()) fail(where, "must be an object");
    check_keys(obj, where, {"mu_P", "mu_I", "mu_Z"}, lax);
    ZipParams zip;
    zip.mu_P = get_number(obj, where, "mu_P");
    zip.mu_I = get_number(obj, where, "mu_I");
    zip.mu_Z = get_number(obj, where, "mu_Z");
    return zip;
}

/// Rescales every stored quantity onto the given bases. Derived bases:
/// conductance S_b/V_b^2, current S_b/V_b, impedance/inductance V_b^2/S_b.
/// Capacitance maps to C * V_b^2/S_b (dimension: seconds), keeping the
/// dynamics in true seconds.
void normalize(GridSpec& spec, const PerUnitBase& base) {
    const double ohm_base = base.base_voltage * base.base_voltage / base.base_power;
    for (auto& unit : spec.pq_units) {
        unit.capacitance *= ohm_base;
        unit.conductance *= ohm_base;
        unit.power_ref /= base.base_power;
    }
    for (auto& unit : spec.vc_units) {
        unit.capacitance *= ohm_base;
        unit.conductance *= ohm_base;
        unit.power_ref /= base.base_power;
        unit.zip.mu_P /= base.base_power;
        unit.zip.mu_I *= base.base_voltage / base.base_power;
        unit.zip.mu_Z *= ohm_base;
    }
    for (auto& line : spec.lines) {
        line.resistance /= ohm_base;
        line.inductance /= ohm_base;
    }
    spec.v_nom /= base.base_voltage;
}

}  // namespace

GridSpec parse_grid(const json& doc, const LoadOptions& opts) {
    if (!doc.is_object()) fail("grid", "document root must be an object");
    check_keys(doc, "grid", {"pq_units", "vc_units", "lines", "v_nom", "per_unit"}, opts.lax);

    GridSpec spec;
    spec.v_nom = get_number(doc, "grid", "v_nom");

    const json& pq = get_array(doc, "grid", "pq_units");
    for (std::size_t i = 0; i < pq.size(); ++i) {
        const std::string where = "pq_units[" + std::to_string(i) + "]";
        const json& obj = pq[i];
        if (!obj.is_object()) fail(where, "must be an object");
        check_keys(obj, where, {"id", "capacitance", "conductance", "power_ref"}, opts.lax);
        PqUnit unit;
        unit.id = get_string(obj, where, "id");
        unit.capacitance = get_number(obj, where, "capacitance");
        unit.conductance = get_number(obj, where, "conductance");
        unit.power_ref = get_number(obj, where, "power_ref");
        spec.pq_units.push_back(std::move(unit));
    }

    const json& vc = get_array(doc, "grid", "vc_units");
    for (std::size_t i = 0; i < vc.size(); ++i) {
        const std::string where = "vc_units[" + std::to_string(i) + "]";
        const json& obj = vc[i];
        if (!obj.is_object()) fail(where, "must be an object");
        check_keys(obj, where, {"id", "capacitance", "conductance", "power_ref", "zip"},
                   opts.lax);
        VcUnit unit;
        unit.id = get_string(obj, where, "id");
        unit.capacitance = get_number(obj, where, "capacitance");
        unit.conductance = get_number(obj, where, "conductance");
        unit.power_ref = get_number(obj, where, "power_ref");
        unit.zip = parse_zip(get_key(obj, where, "zip"), where + ".zip", opts.lax);
        spec.vc_units.push_back(std::move(unit));
    }

    const json& lines = get_array(doc, "grid", "lines");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string where = "lines[" + std::to_string(i) + "]";
        const json& obj = lines[i];
        if (!obj.is_object()) fail(where, "must be an object");
        check_keys(obj, where, {"from_id", "to_id", "resistance", "inductance"}, opts.lax);
        Line line;
        line.from_id = get_string(obj, where, "from_id");
        line.to_id = get_string(obj, where, "to_id");
        line.resistance = get_number(obj, where, "resistance");
        line.inductance = get_number(obj, where, "inductance");
        spec.lines.push_back(std::move(line));
    }

    if (doc.contains("per_unit")) {
        const json& obj = get_object(doc, "grid", "per_unit");
        check_keys(obj, "per_unit", {"base_power", "base_voltage"}, opts.lax);
        PerUnitBase base;
        base.base_power = get_number(obj, "per_unit", "base_power");
        base.base_voltage = get_number(obj, "per_unit", "base_voltage");
        if (base.base_power <= 0.0) fail("per_unit", "base_power must be positive");
        if (base.base_voltage <= 0.0) fail("per_unit", "base_voltage must be positive");
        normalize(spec, base);
        spec.per_unit = base;
    } else if (opts.require_per_unit) {
        throw Error(ErrorCode::PerUnitMissing,
                    "per-unit normalization requested but the grid file has no per_unit block");
    }

    return spec;
}

GridSpec load_grid(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open grid file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    return parse_grid(doc, opts);
}

json grid_to_json(const GridSpec& spec) {
    json doc;
    doc["v_nom"] = spec.v_nom;
    doc["pq_units"] = json::array();
    for (const auto& unit : spec.pq_units) {
        doc["pq_units"].push_back({{"id", unit.id},
                                   {"capacitance", unit.capacitance},
                                   {"conductance", unit.conductance},
                                   {"power_ref", unit.power_ref}});
    }
    doc["vc_units"] = json::array();
    for (const auto& unit : spec.vc_units) {
        doc["vc_units"].push_back({{"id", unit.id},
                                   {"capacitance", unit.capacitance},
                                   {"conductance", unit.conductance},
                                   {"power_ref", unit.power_ref},
                                   {"zip",
                                    {{"mu_P", unit.zip.mu_P},
                                     {"mu_I", unit.zip.mu_I},
                                     {"mu_Z", unit.zip.mu_Z}}}});
    }
    doc["lines"] = json::array();
    for (const auto& line : spec.lines) {
        doc["lines"].push_back({{"from_id", line.from_id},
                                {"to_id", line.to_id},
                                {"resistance", line.resistance},
                                {"inductance", line.inductance}});
    }
    return doc;
}

void save_grid(const GridSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write grid file: " + path);
    out << grid_to_json(spec).dump(2) << '\n';
}

}  // namespace hvdc
