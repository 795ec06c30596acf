#include "covertnet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "covertnet/mathutil.hpp"
#include "covertnet/rng.hpp"
#include <json.hpp>

namespace covertnet {

using nlohmann::json;

double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double RadioConstants::beta0() const { return std::pow(10.0, beta0_db / 10.0); }
double RadioConstants::p_max_w() const { return p_max_mw / 1000.0; }
double RadioConstants::sigma_b_sq() const { return std::pow(10.0, noise_b_dbm / 10.0) / 1000.0; }
double RadioConstants::sigma_w_sq() const { return std::pow(10.0, noise_w_dbm / 10.0) / 1000.0; }

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void RadioConstants::validate() const {
    require(std::isfinite(beta0_db), "beta0_db: must be finite");
    require(std::isfinite(alpha) && alpha > 0.0, "alpha: must be finite and > 0");
    require(std::isfinite(p_max_mw) && p_max_mw > 0.0, "p_max_mw: must be finite and > 0");
    require(std::isfinite(noise_b_dbm), "noise_dbm: must be finite");
    require(std::isfinite(noise_w_dbm), "noise_dbm: must be finite");
}

double path_loss_coefficient(double d, const RadioConstants& constants) {
    if (!(d > 0.0)) throw std::domain_error("path_loss_coefficient: distance must be > 0 (co-located nodes)");
    return constants.beta0() * std::pow(d, -constants.alpha);
}

void Scenario::validate() const {
    constants.validate();
    require(!users.empty(), "users: at least one user required");
    require(distance(alice, bob) > 0.0, "alice: co-located with bob");
    require(distance(alice, willie) > 0.0, "alice: co-located with willie");
    for (std::size_t m = 0; m < users.size(); ++m) {
        if (distance(users[m], bob) <= 0.0 || distance(users[m], willie) <= 0.0) {
            std::ostringstream oss;
            oss << "users[" << m << "]: co-located with bob or willie";
            throw std::invalid_argument(oss.str());
        }
    }
}

Scenario generate_adverse_scenario(const Vec2& alice, const Vec2& bob, const Vec2& willie,
                                   const AnnulusSpec& spec, const RadioConstants& constants) {
    constants.validate();
    require(spec.count >= 1, "users.count: must be >= 1");
    const double d_aw = distance(alice, willie);
    require(spec.r_inner_m >= d_aw, "users.r_inner_m: annulus inner radius must be >= d_aw");
    require(spec.r_outer_m > spec.r_inner_m, "users.r_outer_m: must exceed r_inner_m");

    Scenario sc;
    sc.alice = alice;
    sc.bob = bob;
    sc.willie = willie;
    sc.constants = constants;
    sc.seed = spec.seed;
    sc.users.reserve(spec.count);

    rng::Generator gen(rng::derive_seed(spec.seed, rng::kTopology, 0));
    const double ri2 = spec.r_inner_m * spec.r_inner_m;
    const double ro2 = spec.r_outer_m * spec.r_outer_m;
    for (std::size_t m = 0; m < spec.count; ++m) {
        // Inverse CDF on the radius gives a uniform density over the annulus area.
        const double r = std::sqrt(ri2 + gen.uniform01() * (ro2 - ri2));
        const double theta = 2.0 * kPi * gen.uniform01();
        sc.users.push_back({willie.x + r * std::cos(theta), willie.y + r * std::sin(theta)});
    }
    sc.validate();
    return sc;
}

FadingMap fading_map(const Scenario& scenario) {
    FadingMap fm;
    fm.lambda_ab = path_loss_coefficient(distance(scenario.alice, scenario.bob), scenario.constants);
    fm.lambda_aw = path_loss_coefficient(distance(scenario.alice, scenario.willie), scenario.constants);
    fm.lambda_mb.reserve(scenario.users.size());
    fm.lambda_mw.reserve(scenario.users.size());
    for (const auto& u : scenario.users) {
        fm.lambda_mb.push_back(path_loss_coefficient(distance(u, scenario.bob), scenario.constants));
        fm.lambda_mw.push_back(path_loss_coefficient(distance(u, scenario.willie), scenario.constants));
    }
    return fm;
}

namespace {

Vec2 parse_vec2(const json& j, const std::string& field) {
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            field + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

double parse_number(const json& j, const std::string& field) {
    require(j.contains(field) && j[field].is_number(), field + ": missing or not a number");
    return j[field].get<double>();
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("scenario parse error in " + path.string() + ": " + e.what());
    }

    RadioConstants rc;
    rc.beta0_db = parse_number(j, "beta0_db");
    rc.alpha = parse_number(j, "alpha");
    rc.p_max_mw = parse_number(j, "p_max_mw");
    rc.noise_b_dbm = rc.noise_w_dbm = parse_number(j, "noise_dbm");
    rc.validate();

    require(j.contains("alice") && j.contains("bob") && j.contains("willie"),
            "alice/bob/willie: positions required");
    const Vec2 alice = parse_vec2(j["alice"], "alice");
    const Vec2 bob = parse_vec2(j["bob"], "bob");
    const Vec2 willie = parse_vec2(j["willie"], "willie");

    require(j.contains("users") && j["users"].is_object(), "users: object required");
    const json& ju = j["users"];

    if (ju.contains("explicit")) {
        Scenario sc;
        sc.alice = alice;
        sc.bob = bob;
        sc.willie = willie;
        sc.constants = rc;
        sc.seed = ju.value("seed", std::uint64_t{0});
        require(ju["explicit"].is_array() && !ju["explicit"].empty(),
                "users.explicit: non-empty array required");
        for (std::size_t m = 0; m < ju["explicit"].size(); ++m) {
            sc.users.push_back(parse_vec2(ju["explicit"][m], "users.explicit[" + std::to_string(m) + "]"));
        }
        sc.validate();
        return sc;
    }

    AnnulusSpec spec;
    spec.count = static_cast<std::size_t>(parse_number(ju, "count"));
    spec.r_inner_m = parse_number(ju, "r_inner_m");
    spec.r_outer_m = parse_number(ju, "r_outer_m");
    require(ju.contains("seed") && ju["seed"].is_number_unsigned(), "users.seed: unsigned integer required");
    spec.seed = ju["seed"].get<std::uint64_t>();
    return generate_adverse_scenario(alice, bob, willie, spec, rc);
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    json j;
    j["beta0_db"] = scenario.constants.beta0_db;
    j["alpha"] = scenario.constants.alpha;
    j["p_max_mw"] = scenario.constants.p_max_mw;
    j["noise_dbm"] = scenario.constants.noise_b_dbm;
    j["alice"] = {scenario.alice.x, scenario.alice.y};
    j["bob"] = {scenario.bob.x, scenario.bob.y};
    j["willie"] = {scenario.willie.x, scenario.willie.y};
    json users = json::array();
    for (const auto& u : scenario.users) users.push_back({u.x, u.y});
    j["users"] = {{"explicit", users}, {"seed", scenario.seed}};

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path.string());
    out << j.dump(2) << "\n";
}

bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

bool operator==(const RadioConstants& a, const RadioConstants& b) {
    return a.beta0_db == b.beta0_db && a.alpha == b.alpha && a.p_max_mw == b.p_max_mw &&
           a.noise_b_dbm == b.noise_b_dbm && a.noise_w_dbm == b.noise_w_dbm;
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.alice == b.alice && a.bob == b.bob && a.willie == b.willie && a.users == b.users &&
           a.constants == b.constants && a.seed == b.seed;
}

}  // namespace covertnet
