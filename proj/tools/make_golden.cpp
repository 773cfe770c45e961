// Regenerates golden/green.json and golden/critical.json.
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "latspec/golden.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Compute and store threshold constants"};
    int n_max = 5;
    std::string out = latspec::golden_dir().string();
    app.add_option("--n-max", n_max, "Largest dimension")->check(CLI::Range(1, 8));
    app.add_option("--out", out, "Output directory");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto green = latspec::compute_green_golden(n_max);
        const auto critical = latspec::compute_critical_golden(green);
        std::filesystem::create_directories(out);
        latspec::write_golden(std::filesystem::path(out) / "green.json", green);
        latspec::write_golden(std::filesystem::path(out) / "critical.json", critical);
        std::cout << "wrote " << green.entries.size() + critical.entries.size() << " constants to " << out << "\n";
    } catch (const std::exception& e) {
        std::cerr << "make_golden: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
