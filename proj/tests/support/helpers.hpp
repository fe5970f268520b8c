#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edm/dsl.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string model_path(const std::string& name) {
    return std::string(EDM_MODELS_DIR) + "/" + name;
}

inline std::string fixture_path(const std::string& name) {
    return std::string(EDM_FIXTURES_DIR) + "/" + name;
}

inline edm::EdmModel load_model(const std::string& path) {
    return edm::parse_model(read_file(path));
}

inline edm::ReferentDocument load_referent(const std::string& path) {
    return edm::parse_referent(read_file(path));
}

} // namespace testsupport
