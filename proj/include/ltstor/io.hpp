#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "ltstor/lt.hpp"
#include "ltstor/sim.hpp"

namespace ltstor {

/// Line-oriented full-node format: header "k S", then one row per droplet
/// node holding its coefficient bits as a 0/1 string, optionally followed by
/// the hex-encoded payload.
void write_full_node(std::ostream& os, const FullNode& node,
                     bool include_payloads = true);
void save_full_node(const std::string& path, const FullNode& node,
                    bool include_payloads = true);
FullNode load_full_node(const std::string& path);
FullNode read_full_node(std::istream& is);

std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);

/// Fixed-format double used in every CSV cell so identical results serialize
/// to identical bytes.
std::string format_double(double v);

/// Flat key=value experiment-config file ('#' comments, blank lines ok).
std::map<std::string, std::string> parse_config_file(const std::string& path);
/// Applies recognized keys onto a config; unknown keys throw.
void apply_config(ExperimentConfig& config,
                  const std::map<std::string, std::string>& kv);

std::string decoder_name(DecoderKind kind);
DecoderKind decoder_from_name(const std::string& name);
std::string strategy_name(AttackStrategy s);
AttackStrategy strategy_from_name(const std::string& name);

/// CSV row for one experiment result (header:
/// "k,S,decoder,K,eta_c,strategy,sigma,sigma0,trials,failures,failure_rate,stderr,mean_droplets_used,mean_xor,mean_eta_b").
extern const char* kExperimentCsvHeader;
std::string experiment_csv_row(const ExperimentConfig& config,
                               const FailureRateResult& result);

/// JSON summary (config echo + results) for machine consumption.
std::string experiment_json(const ExperimentConfig& config,
                            const FailureRateResult& result);

}  // namespace ltstor
