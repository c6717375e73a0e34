#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dropsim/queue.hpp"
#include "dropsim/traffic.hpp"

namespace dropsim {

struct ParseError : std::runtime_error {
    ParseError(int line_, std::string field_, const std::string& what_)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_
                                       : what_),
          line(line_),
          field(std::move(field_)) {}
    int line;
    std::string field;
};

struct LinkSpec {
    std::string from;
    std::string to;
    double bandwidth = 1e6;  // bits/s
    Seconds delay = 0.01;
    QueueDiscipline discipline = QueueDiscipline::DropTail;
    int limit = -1;  // negative: default (10 DropTail, 30 RED)
    RedConfig red;
    int line = 0;

    int effective_limit() const {
        if (limit >= 0)
            return limit;
        return discipline == QueueDiscipline::Red ? 30 : 10;
    }
};

struct AgentSpec {
    std::string id;
    std::string src;
    std::string dst;
    int flow_id = 0;
    int window = 20;  // receiver window, packets
    int line = 0;
};

struct AppSpec {
    std::string agent;
    ExpOnOffConfig cfg;
    int line = 0;
};

// Declarative description of one run: nodes, links, agents, apps,
// recording, outputs.
struct Scenario {
    Seconds duration = 5.0;
    uint64_t seed = 1;
    std::vector<std::string> nodes;
    std::vector<LinkSpec> links;
    std::vector<AgentSpec> agents;
    std::vector<AppSpec> apps;
    Seconds record_interval = 0.1;
    std::string trace_file = "out.tr";
};

bool operator==(const LinkSpec& a, const LinkSpec& b);
bool operator==(const AgentSpec& a, const AgentSpec& b);
bool operator==(const AppSpec& a, const AppSpec& b);
bool operator==(const ExpOnOffConfig& a, const ExpOnOffConfig& b);
bool operator==(const RedConfig& a, const RedConfig& b);
bool operator==(const Scenario& a, const Scenario& b);

// Unit suffixes: k = 1e3 b/s, Mb = 1e6 b/s, ms = 1e-3 s, s = seconds,
// bare numbers are base units. Throws ParseError with the line number.
double parse_bandwidth(const std::string& text, int line, const std::string& field);
Seconds parse_time_value(const std::string& text, int line, const std::string& field);

// Parses and fully validates (references, reverse paths, bounds).
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Canonical text form; parse(render(s)) == s.
std::string render_scenario(const Scenario& s);

void validate_scenario(const Scenario& s);

}  // namespace dropsim
