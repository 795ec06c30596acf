#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace covertnet {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// Radio constants are stored in the config-file domain (dB / dBm / mW) so a
// scenario survives a save/load cycle bit-exactly; everything downstream works
// with the linear accessors.
struct RadioConstants {
    double beta0_db = -34.5;   // reference channel gain at 1 m (dB)
    double alpha = 3.5;        // path-loss exponent
    double p_max_mw = 200.0;   // per-user transmit power cap (mW)
    double noise_b_dbm = -102.0;  // noise power at Bob (dBm)
    double noise_w_dbm = -102.0;  // noise power at Willie (dBm)

    double beta0() const;       // linear power ratio
    double p_max_w() const;     // W
    double sigma_b_sq() const;  // W
    double sigma_w_sq() const;  // W

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct AnnulusSpec {
    double r_inner_m = 0.0;
    double r_outer_m = 0.0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

struct Scenario {
    Vec2 alice;
    Vec2 bob;
    Vec2 willie;
    std::vector<Vec2> users;
    RadioConstants constants;
    std::uint64_t seed = 0;  // topology seed; also the default master seed for experiments

    std::size_t user_count() const { return users.size(); }
    // Rejects co-located node pairs on any link used downstream.
    void validate() const;
};

// Large-scale fading coefficients for every link on the covert band.
struct FadingMap {
    double lambda_ab = 0.0;
    double lambda_aw = 0.0;
    std::vector<double> lambda_mb;
    std::vector<double> lambda_mw;

    std::size_t user_count() const { return lambda_mw.size(); }
};

// beta0 * d^-alpha; throws std::domain_error for d <= 0 (co-located nodes).
double path_loss_coefficient(double d, const RadioConstants& constants);

// Places `spec.count` users uniformly (by area) in the annulus around Willie,
// enforcing d_mw > d_aw. Deterministic in spec.seed.
Scenario generate_adverse_scenario(const Vec2& alice, const Vec2& bob, const Vec2& willie,
                                   const AnnulusSpec& spec, const RadioConstants& constants);

FadingMap fading_map(const Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

bool operator==(const Vec2& a, const Vec2& b);
bool operator==(const RadioConstants& a, const RadioConstants& b);
bool operator==(const Scenario& a, const Scenario& b);

}  // namespace covertnet
