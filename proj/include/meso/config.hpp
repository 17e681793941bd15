#pragma once

#include "meso/clients.hpp"

#include <filesystem>
#include <string>

namespace meso {

// Toolkit configuration. Precedence: built-in defaults < config file < flags.
struct Config {
    EndpointConfig llm{"", "", "MESO_LLM_TOKEN", 30};
    EndpointConfig embedding{"", "", "MESO_EMBED_TOKEN", 30};
    unsigned parallelism = 1;
    int retries = 2;

    // Flat `key = "value"` rendering, suitable for --show-config and for
    // writing back to a config file.
    std::string to_string() const;
};

// Parses the flat key = "value" format ('#' comments and blank lines
// allowed). Unknown keys are rejected.
Config parse_config(const std::string& text, const Config& base = Config{});
Config load_config_file(const std::filesystem::path& path, const Config& base = Config{});

} // namespace meso
