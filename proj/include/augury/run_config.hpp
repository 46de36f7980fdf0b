#pragma once

#include "augury/contact.hpp"
#include "augury/types.hpp"

#include <optional>
#include <string>

namespace augury {

// Flat key = value run description; see the README for the grammar.
struct RunConfig {
    std::string scenario;  // "two-block" | "ramp"
    int k = 0;             // two-block refinement
    double h = 0.25;       // ramp mesh size
    double mu = 0.0;
    TransferMode mode = TransferMode::APIC;
    ContactLaw law = ContactLaw::Friction;
    int iterations = 1;
    std::optional<double> dt_override;
    std::optional<double> end_time;
    std::string out_dir = "out";
    long snapshot_every = 1000;
    long diag_every = 10;
    unsigned long seed = 0;  // reserved; physics is seed-free

    void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Every run echoes its fully-resolved configuration next to the outputs.
std::string render_manifest(const RunConfig& config, double dt, double tau,
                            double grid_spacing, double end_time);

const char* to_string(TransferMode mode);
const char* to_string(ContactLaw law);
TransferMode transfer_mode_from(const std::string& word);
ContactLaw contact_law_from(const std::string& word);

}  // namespace augury
