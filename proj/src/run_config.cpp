#include "augury/run_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace augury {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
    throw InvalidInput("config line " + std::to_string(line) + ", key '" + key +
                       "': " + what);
}

double parse_double(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(out)) fail(key, line, "expected a number");
        return out;
    } catch (const InvalidInput&) {
        throw;
    } catch (...) {
        fail(key, line, "expected a number");
    }
}

long parse_long(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const long out = std::stol(value, &used);
        if (used != value.size()) fail(key, line, "expected an integer");
        return out;
    } catch (const InvalidInput&) {
        throw;
    } catch (...) {
        fail(key, line, "expected an integer");
    }
}

}  // namespace

const char* to_string(TransferMode mode) {
    return mode == TransferMode::APIC ? "apic" : "pic";
}

const char* to_string(ContactLaw law) {
    switch (law) {
        case ContactLaw::Sticky: return "sticky";
        case ContactLaw::Separation: return "separation";
        case ContactLaw::Friction: return "friction";
    }
    return "?";
}

TransferMode transfer_mode_from(const std::string& word) {
    if (word == "pic") return TransferMode::PIC;
    if (word == "apic") return TransferMode::APIC;
    throw InvalidInput("unknown transfer mode '" + word + "' (expected pic or apic)");
}

ContactLaw contact_law_from(const std::string& word) {
    if (word == "sticky") return ContactLaw::Sticky;
    if (word == "separation") return ContactLaw::Separation;
    if (word == "friction") return ContactLaw::Friction;
    throw InvalidInput("unknown contact law '" + word +
                       "' (expected sticky, separation, or friction)");
}

void RunConfig::validate() const {
    if (scenario.empty()) {
        throw InvalidInput("config: scenario is required");
    }
    if (scenario != "two-block" && scenario != "ramp") {
        throw InvalidInput("config: unknown scenario '" + scenario +
                           "' (expected two-block or ramp)");
    }
    if (mu < 0.0) {
        throw InvalidInput("config: mu must be non-negative");
    }
    if (iterations < 0) {
        throw InvalidInput("config: iterations must be non-negative");
    }
    if ((law == ContactLaw::Sticky) != (iterations == 0)) {
        throw InvalidInput("config: sticky law pairs with iterations = 0 and the "
                           "separating/frictional laws with iterations >= 1");
    }
    if (snapshot_every < 1 || diag_every < 1) {
        throw InvalidInput("config: cadences must be at least 1");
    }
    if (dt_override && !(*dt_override > 0.0)) {
        throw InvalidInput("config: dt must be positive");
    }
    if (end_time && !(*end_time > 0.0)) {
        throw InvalidInput("config: end_time must be positive");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    bool law_given = false, iters_given = false;

    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("config line " + std::to_string(line_no) +
                               ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail(key, line_no, "empty value");

        if (key == "scenario") {
            config.scenario = value;
        } else if (key == "k") {
            config.k = static_cast<int>(parse_long(key, value, line_no));
        } else if (key == "h") {
            config.h = parse_double(key, value, line_no);
        } else if (key == "mu") {
            config.mu = parse_double(key, value, line_no);
        } else if (key == "mode") {
            config.mode = transfer_mode_from(value);
        } else if (key == "law") {
            config.law = contact_law_from(value);
            law_given = true;
        } else if (key == "iterations") {
            config.iterations = static_cast<int>(parse_long(key, value, line_no));
            iters_given = true;
        } else if (key == "dt") {
            config.dt_override = parse_double(key, value, line_no);
        } else if (key == "end_time") {
            config.end_time = parse_double(key, value, line_no);
        } else if (key == "out_dir") {
            config.out_dir = value;
        } else if (key == "snapshot_every") {
            config.snapshot_every = parse_long(key, value, line_no);
        } else if (key == "diag_every") {
            config.diag_every = parse_long(key, value, line_no);
        } else if (key == "seed") {
            config.seed = static_cast<unsigned long>(parse_long(key, value, line_no));
        } else {
            fail(key, line_no, "unknown key");
        }
    }

    // A sticky run without an explicit iteration count means no iterations.
    if (law_given && config.law == ContactLaw::Sticky && !iters_given) {
        config.iterations = 0;
    }
    config.validate();
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open config file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string render_manifest(const RunConfig& config, double dt, double tau,
                            double grid_spacing, double end_time) {
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "scenario = %s\n"
                  "k = %d\n"
                  "h = %.17g\n"
                  "mu = %.17g\n"
                  "mode = %s\n"
                  "law = %s\n"
                  "iterations = %d\n"
                  "dt = %.17g\n"
                  "tau = %.17g\n"
                  "grid_spacing = %.17g\n"
                  "end_time = %.17g\n"
                  "out_dir = %s\n"
                  "snapshot_every = %ld\n"
                  "diag_every = %ld\n"
                  "seed = %lu\n",
                  config.scenario.c_str(), config.k, config.h, config.mu,
                  to_string(config.mode), to_string(config.law), config.iterations, dt, tau,
                  grid_spacing, end_time, config.out_dir.c_str(), config.snapshot_every,
                  config.diag_every, config.seed);
    return buf;
}

}  // namespace augury
