// Emits the deterministic synthetic hourly archive used by the acceptance
// suite, so the CLI pipeline can be exercised without real utility data.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "synthetic.hpp"
#include "voltcast/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"voltcast-synth: write a synthetic hourly load CSV"};
    std::string out;
    voltcast::synth::SynthConfig config;
    int years = 24;
    app.add_option("--out", out, "output CSV path")->required();
    app.add_option("--start-year", config.start_year, "first year");
    app.add_option("--years", years, "number of years");
    app.add_option("--seed", config.seed, "noise seed");
    CLI11_PARSE(app, argc, argv);

    try {
        config.months = years * 12;
        voltcast::synth::write_hourly_csv_file(out, config);
        std::cout << "wrote " << years << " years of hourly data (" << config.start_year << "-01"
                  << " onward) to " << out << '\n';
        return 0;
    } catch (const voltcast::Error& e) {
        std::cerr << "voltcast-synth: " << e.what() << '\n';
        return e.kind() == voltcast::ErrorKind::usage ? 2 : 3;
    }
}
