#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "oamix/catalog.hpp"
#include "oamix/io.hpp"
#include "oamix/modelmat.hpp"

namespace testing {

inline std::filesystem::path golden(const std::string& name) {
    return std::filesystem::path(OAMIX_GOLDEN_DIR) / name;
}

inline oamix::BlockedDesign golden_design(const std::string& name) {
    return oamix::io::read_design_file(golden(name));
}

// Table 3 with the quadratic Scheffe model, ordering columns, the three
// reported mixture-order interactions and the block column.
inline oamix::ModelSpec table3_spec(oamix::Coding coding = oamix::Coding::Coded) {
    oamix::ModelSpec s;
    s.family = oamix::ModelFamily::ScheffeQuadratic;
    s.include_pwo = true;
    s.interaction_terms = oamix::modelmat::default_interaction_subset(3);
    s.include_block = true;
    s.coding = coding;
    return s;
}

inline oamix::ModelSpec table4_spec(oamix::Coding coding = oamix::Coding::Coded) {
    auto s = table3_spec(coding);
    s.family = oamix::ModelFamily::KQuadratic;
    return s;
}

inline oamix::ModelSpec table8_spec(oamix::Coding coding = oamix::Coding::Coded) {
    auto s = table3_spec(coding);
    s.family = oamix::ModelFamily::ComponentAmountQuadratic;
    return s;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("oamix-test-" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

}  // namespace testing
