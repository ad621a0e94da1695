#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef IRMIA_TEST_DATA
#error "IRMIA_TEST_DATA must point at the golden corpus"
#endif

namespace irmia::testing {

std::string data_path(const std::string& stem) { return std::string(IRMIA_TEST_DATA) + "/" + stem + ".irmia"; }

IrMia golden(const std::string& stem) { return load_file(data_path(stem)); }

std::vector<std::string> golden_files() {
    std::vector<std::string> r;
    for (const auto& e : std::filesystem::directory_iterator(IRMIA_TEST_DATA))
        if (e.path().extension() == ".irmia") r.push_back(e.path().string());
    std::sort(r.begin(), r.end());
    return r;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::vector<std::string> body_lines(const IrMia& a) {
    std::vector<std::string> r;
    std::istringstream in(serialize(a));
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("irmia ", 0) != 0) r.push_back(line);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

std::string structural_diff(const IrMia& got, const IrMia& want) {
    if (isomorphic(got, want).isomorphic) return {};
    auto g = body_lines(got), w = body_lines(want);
    std::vector<std::string> only_g, only_w;
    std::set_difference(g.begin(), g.end(), w.begin(), w.end(), std::back_inserter(only_g));
    std::set_difference(w.begin(), w.end(), g.begin(), g.end(), std::back_inserter(only_w));
    std::string r = "  got " + std::to_string(got.num_states()) + " states / " + std::to_string(got.edges().size()) +
                    " edges, want " + std::to_string(want.num_states()) + " / " +
                    std::to_string(want.edges().size()) + "\n";
    for (const auto& l : only_g) r += "  - " + l + "\n";
    for (const auto& l : only_w) r += "  + " + l + "\n";
    return r;
}

}  // namespace irmia::testing
