#include "dropsim/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dropsim/topology.hpp"

namespace dropsim {

bool operator==(const RedConfig& a, const RedConfig& b) {
    return a.w_q == b.w_q && a.min_th == b.min_th && a.max_th == b.max_th &&
           a.max_p == b.max_p && a.mean_pkt_size == b.mean_pkt_size;
}

bool operator==(const LinkSpec& a, const LinkSpec& b) {
    return a.from == b.from && a.to == b.to && a.bandwidth == b.bandwidth &&
           a.delay == b.delay && a.discipline == b.discipline && a.limit == b.limit &&
           a.red == b.red;
}

bool operator==(const AgentSpec& a, const AgentSpec& b) {
    return a.id == b.id && a.src == b.src && a.dst == b.dst && a.flow_id == b.flow_id &&
           a.window == b.window;
}

bool operator==(const ExpOnOffConfig& a, const ExpOnOffConfig& b) {
    return a.packet_size == b.packet_size && a.rate == b.rate &&
           a.burst_time == b.burst_time && a.idle_time == b.idle_time &&
           a.start_at == b.start_at && a.stop_at == b.stop_at;
}

bool operator==(const AppSpec& a, const AppSpec& b) {
    return a.agent == b.agent && a.cfg == b.cfg;
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.duration == b.duration && a.seed == b.seed && a.nodes == b.nodes &&
           a.links == b.links && a.agents == b.agents && a.apps == b.apps &&
           a.record_interval == b.record_interval && a.trace_file == b.trace_file;
}

namespace {

double parse_number(const std::string& text, int line, const std::string& field) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin)
        throw ParseError(line, field, "bad number '" + text + "' for " + field);
    return v;
}

// Splits "<number><suffix>"; returns the suffix and parses the number.
double parse_suffixed(const std::string& text, int line, const std::string& field,
                      std::string& suffix) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin)
        throw ParseError(line, field, "bad number '" + text + "' for " + field);
    suffix.assign(end);
    return v;
}

int parse_int(const std::string& text, int line, const std::string& field) {
    double v = parse_number(text, line, field);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ParseError(line, field, "expected integer '" + text + "' for " + field);
    return i;
}

uint64_t parse_u64(const std::string& text, int line, const std::string& field) {
    try {
        return std::stoull(text);
    } catch (...) {
        throw ParseError(line, field, "bad integer '" + text + "' for " + field);
    }
}

struct KeyValues {
    int line;
    std::string section;
    std::vector<std::pair<std::string, std::string>> kv;
    std::set<std::string> seen;

    std::string take(const std::string& key, const std::string& fallback,
                     bool required = false) {
        for (const auto& [k, v] : kv) {
            if (k == key) {
                seen.insert(key);
                return v;
            }
        }
        if (required)
            throw ParseError(line, key, "missing " + key + "= in '" + section + "' line");
        return fallback;
    }

    void check_unknown() const {
        for (const auto& [k, v] : kv)
            if (!seen.count(k))
                throw ParseError(line, k,
                                 "unknown key '" + k + "' in '" + section + "' line");
    }
};

}  // namespace

double parse_bandwidth(const std::string& text, int line, const std::string& field) {
    std::string suffix;
    double v = parse_suffixed(text, line, field, suffix);
    if (suffix.empty())
        return v;
    if (suffix == "k" || suffix == "K" || suffix == "kb" || suffix == "Kb")
        return v * 1e3;
    if (suffix == "Mb" || suffix == "mb" || suffix == "M" || suffix == "MB")
        return v * 1e6;
    throw ParseError(line, field, "unknown bandwidth unit '" + suffix + "' in " + field);
}

Seconds parse_time_value(const std::string& text, int line, const std::string& field) {
    std::string suffix;
    double v = parse_suffixed(text, line, field, suffix);
    if (suffix.empty() || suffix == "s")
        return v;
    if (suffix == "ms")
        return v * 1e-3;
    throw ParseError(line, field, "unknown time unit '" + suffix + "' in " + field);
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<int> node_lines;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string section;
        if (!(ls >> section))
            continue;

        KeyValues kv{lineno, section, {}, {}};
        std::string tok;
        while (ls >> tok) {
            size_t eq = tok.find('=');
            if (eq == std::string::npos)
                throw ParseError(lineno, tok, "expected key=value, got '" + tok + "'");
            kv.kv.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        }

        if (section == "sim") {
            s.duration = parse_time_value(kv.take("duration", "", true), lineno, "duration");
            std::string seed = kv.take("seed", "");
            if (!seed.empty())
                s.seed = parse_u64(seed, lineno, "seed");
        } else if (section == "node") {
            s.nodes.push_back(kv.take("id", "", true));
            node_lines.push_back(lineno);
        } else if (section == "link") {
            LinkSpec l;
            l.line = lineno;
            l.from = kv.take("from", "", true);
            l.to = kv.take("to", "", true);
            l.bandwidth = parse_bandwidth(kv.take("bw", "", true), lineno, "bw");
            l.delay = parse_time_value(kv.take("delay", "", true), lineno, "delay");
            std::string q = kv.take("queue", "DropTail");
            if (q == "DropTail" || q == "droptail")
                l.discipline = QueueDiscipline::DropTail;
            else if (q == "RED" || q == "red")
                l.discipline = QueueDiscipline::Red;
            else
                throw ParseError(lineno, "queue", "unknown queue discipline '" + q + "'");
            std::string lim = kv.take("limit", "");
            if (!lim.empty()) {
                l.limit = parse_int(lim, lineno, "limit");
                if (l.limit < 0)
                    throw ParseError(lineno, "limit", "queue limit must be >= 0");
            }
            std::string v;
            bool red_params = false;
            if (!(v = kv.take("wq", "")).empty())
                l.red.w_q = parse_number(v, lineno, "wq"), red_params = true;
            if (!(v = kv.take("minth", "")).empty())
                l.red.min_th = parse_number(v, lineno, "minth"), red_params = true;
            if (!(v = kv.take("maxth", "")).empty())
                l.red.max_th = parse_number(v, lineno, "maxth"), red_params = true;
            if (!(v = kv.take("maxp", "")).empty())
                l.red.max_p = parse_number(v, lineno, "maxp"), red_params = true;
            if (!(v = kv.take("meanpkt", "")).empty())
                l.red.mean_pkt_size = parse_int(v, lineno, "meanpkt"), red_params = true;
            if (red_params && l.discipline != QueueDiscipline::Red)
                throw ParseError(lineno, "queue", "RED parameters on a DropTail link");
            s.links.push_back(l);
        } else if (section == "agent") {
            AgentSpec a;
            a.line = lineno;
            a.id = kv.take("id", "", true);
            a.src = kv.take("src", "", true);
            a.dst = kv.take("dst", "", true);
            a.flow_id = parse_int(kv.take("flow", "", true), lineno, "flow");
            std::string w = kv.take("window", "");
            if (!w.empty())
                a.window = parse_int(w, lineno, "window");
            s.agents.push_back(a);
        } else if (section == "app") {
            AppSpec a;
            a.line = lineno;
            std::string type = kv.take("type", "expoo");
            if (type != "expoo")
                throw ParseError(lineno, "type", "unknown app type '" + type + "'");
            a.agent = kv.take("agent", "", true);
            a.cfg.packet_size = parse_int(kv.take("pktsize", "210"), lineno, "pktsize");
            a.cfg.burst_time = parse_time_value(kv.take("burst", "2ms"), lineno, "burst");
            a.cfg.idle_time = parse_time_value(kv.take("idle", "1ms"), lineno, "idle");
            a.cfg.rate = parse_bandwidth(kv.take("rate", "100k"), lineno, "rate");
            a.cfg.start_at = parse_time_value(kv.take("start", "", true), lineno, "start");
            a.cfg.stop_at = parse_time_value(kv.take("stop", "", true), lineno, "stop");
            s.apps.push_back(a);
        } else if (section == "record") {
            s.record_interval =
                parse_time_value(kv.take("interval", "", true), lineno, "interval");
        } else if (section == "trace") {
            s.trace_file = kv.take("file", "", true);
        } else {
            throw ParseError(lineno, section, "unknown section '" + section + "'");
        }
        kv.check_unknown();
    }

    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ParseError(0, path, "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

void validate_scenario(const Scenario& s) {
    if (s.duration <= 0.0)
        throw ParseError(0, "duration", "duration must be positive");
    if (s.record_interval <= 0.0)
        throw ParseError(0, "interval", "record interval must be positive");

    std::set<std::string> node_names;
    for (const std::string& n : s.nodes)
        if (!node_names.insert(n).second)
            throw ParseError(0, "node", "duplicate node " + n);

    auto require_node = [&](const std::string& name, int line) {
        if (!node_names.count(name))
            throw ParseError(line, "node", "unknown node " + name);
    };

    for (const LinkSpec& l : s.links) {
        require_node(l.from, l.line);
        require_node(l.to, l.line);
        if (l.bandwidth <= 0.0)
            throw ParseError(l.line, "bw", "link bandwidth must be positive");
        if (l.delay < 0.0)
            throw ParseError(l.line, "delay", "link delay must be non-negative");
        if (l.discipline == QueueDiscipline::Red) {
            const RedConfig& r = l.red;
            int lim = l.effective_limit();
            if (!(r.w_q > 0.0 && r.w_q <= 1.0))
                throw ParseError(l.line, "wq", "RED weight must be in (0, 1]");
            if (!(r.min_th >= 0.0 && r.min_th < r.max_th && r.max_th <= lim))
                throw ParseError(l.line, "minth",
                                 "RED thresholds must satisfy 0 <= minth < maxth <= limit");
            if (!(r.max_p > 0.0 && r.max_p <= 1.0))
                throw ParseError(l.line, "maxp", "RED max_p must be in (0, 1]");
            if (r.mean_pkt_size <= 0)
                throw ParseError(l.line, "meanpkt", "RED mean packet size must be positive");
        }
    }

    std::set<std::string> agent_ids;
    std::set<int> flow_ids;
    for (const AgentSpec& a : s.agents) {
        if (!agent_ids.insert(a.id).second)
            throw ParseError(a.line, "id", "duplicate agent id " + a.id);
        if (!flow_ids.insert(a.flow_id).second)
            throw ParseError(a.line, "flow",
                             "duplicate flow id " + std::to_string(a.flow_id));
        require_node(a.src, a.line);
        require_node(a.dst, a.line);
        if (a.window < 1)
            throw ParseError(a.line, "window", "receiver window must be >= 1 packet");
    }

    Seconds latest_stop = 0.0;
    for (const AppSpec& a : s.apps) {
        if (!agent_ids.count(a.agent))
            throw ParseError(a.line, "agent", "unknown agent " + a.agent);
        const ExpOnOffConfig& c = a.cfg;
        if (c.packet_size <= 0)
            throw ParseError(a.line, "pktsize", "packet size must be positive");
        if (c.rate <= 0.0)
            throw ParseError(a.line, "rate", "rate must be positive");
        if (c.burst_time <= 0.0)
            throw ParseError(a.line, "burst", "burst time must be positive");
        if (c.idle_time < 0.0)
            throw ParseError(a.line, "idle", "idle time must be non-negative");
        if (!(c.start_at < c.stop_at))
            throw ParseError(a.line, "start", "app start must precede stop");
        if (c.start_at < 0.0)
            throw ParseError(a.line, "start", "app start must be non-negative");
        latest_stop = std::max(latest_stop, c.stop_at);
    }
    if (!s.apps.empty() && s.duration <= latest_stop)
        throw ParseError(0, "duration", "duration must exceed the latest app stop time");

    // Agents need a routed path in both directions for data and acks.
    Topology topo;
    for (const std::string& n : s.nodes)
        topo.add_node(n);
    for (const LinkSpec& l : s.links)
        topo.add_link(*topo.find_node(l.from), *topo.find_node(l.to), l.bandwidth, l.delay,
                      make_droptail(1));
    topo.build_routes();
    for (const AgentSpec& a : s.agents) {
        NodeId src = *topo.find_node(a.src);
        NodeId dst = *topo.find_node(a.dst);
        if (!topo.has_route(src, dst))
            throw ParseError(a.line, "src", "no path from " + a.src + " to " + a.dst);
        if (!topo.has_route(dst, src))
            throw ParseError(a.line, "dst",
                             "no reverse path from " + a.dst + " to " + a.src);
    }
}

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string render_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "sim duration=" << fmt_g(s.duration) << " seed=" << s.seed << '\n';
    for (const std::string& n : s.nodes)
        out << "node id=" << n << '\n';
    for (const LinkSpec& l : s.links) {
        out << "link from=" << l.from << " to=" << l.to << " bw=" << fmt_g(l.bandwidth)
            << " delay=" << fmt_g(l.delay) << " queue="
            << (l.discipline == QueueDiscipline::Red ? "RED" : "DropTail");
        if (l.limit != -1)
            out << " limit=" << l.limit;
        if (l.discipline == QueueDiscipline::Red) {
            out << " wq=" << fmt_g(l.red.w_q) << " minth=" << fmt_g(l.red.min_th)
                << " maxth=" << fmt_g(l.red.max_th) << " maxp=" << fmt_g(l.red.max_p)
                << " meanpkt=" << l.red.mean_pkt_size;
        }
        out << '\n';
    }
    for (const AgentSpec& a : s.agents)
        out << "agent id=" << a.id << " src=" << a.src << " dst=" << a.dst
            << " flow=" << a.flow_id << " window=" << a.window << '\n';
    for (const AppSpec& a : s.apps)
        out << "app type=expoo agent=" << a.agent << " pktsize=" << a.cfg.packet_size
            << " burst=" << fmt_g(a.cfg.burst_time) << " idle=" << fmt_g(a.cfg.idle_time)
            << " rate=" << fmt_g(a.cfg.rate) << " start=" << fmt_g(a.cfg.start_at)
            << " stop=" << fmt_g(a.cfg.stop_at) << '\n';
    out << "record interval=" << fmt_g(s.record_interval) << '\n';
    out << "trace file=" << s.trace_file << '\n';
    return out.str();
}

}  // namespace dropsim
