#include "ltstor/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ltstor {

void write_full_node(std::ostream& os, const FullNode& node,
                     bool include_payloads) {
    os << node.k << ' ' << node.S << '\n';
    for (const auto& d : node.droplet_nodes) {
        os << d.coeffs.to_string();
        if (include_payloads && !d.payload.empty()) {
            os << ' ' << to_hex(d.payload);
        }
        os << '\n';
    }
}

void save_full_node(const std::string& path, const FullNode& node,
                    bool include_payloads) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_full_node(os, node, include_payloads);
    if (!os) throw std::runtime_error("write failed: " + path);
}

FullNode read_full_node(std::istream& is) {
    FullNode node;
    if (!(is >> node.k >> node.S)) {
        throw std::runtime_error("full-node file: bad header, expected 'k S'");
    }
    if (node.S <= node.k) {
        throw std::runtime_error("full-node file: header must satisfy S > k");
    }
    node.droplet_nodes.reserve(node.S);
    std::string line;
    std::getline(is, line);  // rest of header line
    std::size_t payload_size = 0;
    while (node.droplet_nodes.size() < node.S && std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string bits, hex;
        ls >> bits;
        Droplet d;
        d.coeffs = BitVector::from_string(bits);
        if (d.coeffs.size() != node.k) {
            throw std::runtime_error("full-node file: row length != k");
        }
        d.degree = d.coeffs.popcount();
        if (d.degree == 0) {
            throw std::runtime_error("full-node file: zero coefficient row");
        }
        if (ls >> hex) d.payload = from_hex(hex);
        const bool first = node.droplet_nodes.empty();
        if (first) {
            payload_size = d.payload.size();
        } else if (d.payload.size() != payload_size) {
            throw std::runtime_error("full-node file: inconsistent payload sizes");
        }
        node.droplet_nodes.push_back(std::move(d));
    }
    if (node.droplet_nodes.size() != node.S) {
        throw std::runtime_error("full-node file: fewer rows than header S");
    }
    return node;
}

FullNode load_full_node(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_full_node(is);
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::runtime_error("hex payload of odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::runtime_error("invalid hex digit");
    };
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) |
                                           nibble(hex[2 * i + 1]));
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

void apply_config(ExperimentConfig& config,
                  const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "k") config.k = std::stoul(value);
        else if (key == "S") config.S = std::stoul(value);
        else if (key == "c") config.c = std::stod(value);
        else if (key == "delta") config.delta = std::stod(value);
        else if (key == "decoder") config.decoder = decoder_from_name(value);
        else if (key == "K") config.K = std::stoul(value);
        else if (key == "eta_c") config.eta_c = std::stoul(value);
        else if (key == "K_init") config.k_init = std::stoul(value);
        else if (key == "trials") config.trials = std::stoul(value);
        else if (key == "seed") config.master_seed = std::stoull(value);
        else if (key == "threads") config.threads = std::stoul(value);
        else if (key == "strategy") {
            if (!config.attack) config.attack = AttackSpec{};
            config.attack->strategy = strategy_from_name(value);
        } else if (key == "sigma") {
            if (!config.attack) config.attack = AttackSpec{};
            config.attack->sigma = std::stod(value);
        } else if (key == "sigma0") {
            if (!config.attack) config.attack = AttackSpec{};
            config.attack->sigma0 = std::stod(value);
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

std::string decoder_name(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::Bp: return "bp";
        case DecoderKind::Ofg: return "ofg";
        case DecoderKind::Brh: return "brh";
        case DecoderKind::Crh: return "crh";
    }
    return "?";
}

DecoderKind decoder_from_name(const std::string& name) {
    if (name == "bp") return DecoderKind::Bp;
    if (name == "ofg") return DecoderKind::Ofg;
    if (name == "brh") return DecoderKind::Brh;
    if (name == "crh") return DecoderKind::Crh;
    throw std::runtime_error("unknown decoder: " + name);
}

std::string strategy_name(AttackStrategy s) {
    switch (s) {
        case AttackStrategy::Blind: return "blind";
        case AttackStrategy::Degree: return "degree";
        case AttackStrategy::Score: return "score";
        case AttackStrategy::MinRank: return "minrank";
        case AttackStrategy::Auto: return "auto";
    }
    return "?";
}

AttackStrategy strategy_from_name(const std::string& name) {
    if (name == "blind") return AttackStrategy::Blind;
    if (name == "degree") return AttackStrategy::Degree;
    if (name == "score") return AttackStrategy::Score;
    if (name == "minrank") return AttackStrategy::MinRank;
    if (name == "auto") return AttackStrategy::Auto;
    throw std::runtime_error("unknown strategy: " + name);
}

const char* kExperimentCsvHeader =
    "k,S,decoder,K,eta_c,strategy,sigma,sigma0,trials,failures,failure_rate,"
    "stderr,mean_droplets_used,mean_xor,mean_eta_b";

std::string experiment_csv_row(const ExperimentConfig& config,
                               const FailureRateResult& result) {
    std::ostringstream os;
    os << config.k << ',' << config.S << ',' << decoder_name(config.decoder) << ','
       << config.K << ',' << config.eta_c << ',';
    if (config.attack) {
        os << strategy_name(config.attack->strategy) << ','
           << format_double(config.attack->sigma) << ','
           << format_double(config.attack->sigma0);
    } else {
        os << "none,0,0";
    }
    os << ',' << result.trials << ',' << result.failures << ','
       << format_double(result.failure_rate) << ','
       << format_double(result.stderr_value) << ','
       << format_double(result.mean_droplets_used) << ','
       << format_double(result.mean_xor) << ','
       << format_double(result.mean_eta_b);
    return os.str();
}

std::string experiment_json(const ExperimentConfig& config,
                            const FailureRateResult& result) {
    nlohmann::json j;
    j["config"]["k"] = config.k;
    j["config"]["S"] = config.S;
    j["config"]["c"] = config.c;
    j["config"]["delta"] = config.delta;
    j["config"]["decoder"] = decoder_name(config.decoder);
    j["config"]["K"] = config.K;
    j["config"]["eta_c"] = config.eta_c;
    j["config"]["K_init"] = config.k_init;
    j["config"]["trials"] = config.trials;
    j["config"]["seed"] = config.master_seed;
    if (config.attack) {
        j["config"]["attack"]["strategy"] = strategy_name(config.attack->strategy);
        j["config"]["attack"]["sigma"] = config.attack->sigma;
        j["config"]["attack"]["sigma0"] = config.attack->sigma0;
    }
    j["result"]["trials"] = result.trials;
    j["result"]["failures"] = result.failures;
    j["result"]["failure_rate"] = result.failure_rate;
    j["result"]["stderr"] = result.stderr_value;
    j["result"]["mean_droplets_used"] = result.mean_droplets_used;
    j["result"]["mean_xor"] = result.mean_xor;
    j["result"]["mean_eta_b"] = result.mean_eta_b;
    return j.dump(2);
}

}  // namespace ltstor
