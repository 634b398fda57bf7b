#include "ccdes/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ccdes {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string hex_digest(std::uint64_t d) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << d;
    return os.str();
}

const char* kind_name(Certificate::Segment::Kind k) {
    switch (k) {
        case Certificate::Segment::Kind::Prefix: return "prefix";
        case Certificate::Segment::Kind::Cycle: return "cycle";
        case Certificate::Segment::Kind::Link: return "link";
        case Certificate::Segment::Kind::Fault: return "fault";
    }
    throw std::logic_error("unknown segment kind");
}

Certificate::Segment::Kind kind_from_name(const std::string& name) {
    if (name == "prefix") return Certificate::Segment::Kind::Prefix;
    if (name == "cycle") return Certificate::Segment::Kind::Cycle;
    if (name == "link") return Certificate::Segment::Kind::Link;
    if (name == "fault") return Certificate::Segment::Kind::Fault;
    throw std::invalid_argument("unknown route segment kind '" + name + "'");
}

json spath_to_json(const SPath& p) {
    return json{{"states", p.states}, {"events", p.events}};
}

SPath spath_from_json(const json& j) {
    SPath p;
    p.states = j.at("states").get<std::vector<std::string>>();
    p.events = j.at("events").get<std::vector<std::string>>();
    return p;
}

json certificate_to_json(const Certificate& cert) {
    json route = json::array();
    for (auto& seg : cert.route) {
        json s{{"kind", kind_name(seg.kind)},
               {"states", seg.path.states},
               {"events", seg.path.events}};
        if (seg.observer >= 0)
            s["observer"] = seg.observer;
        else
            s["observer"] = nullptr;
        route.push_back(std::move(s));
    }
    json tails = json::array();
    for (auto& t : cert.observer_tails)
        tails.push_back(json{{"observer", t.observer},
                             {"path", spath_to_json(t.path)},
                             {"cycle", spath_to_json(t.cycle)}});
    json j{{"property", property_name(cert.property)},
           {"centralized", cert.centralized},
           {"observers", cert.observer_names},
           {"route", std::move(route)},
           {"observer_tails", std::move(tails)}};
    j["fault_transition"] =
        cert.fault_transition ? json(*cert.fault_transition) : json(nullptr);
    j["tail_path"] = cert.tail_path ? spath_to_json(*cert.tail_path) : json(nullptr);
    j["tail_cycle"] = cert.tail_cycle ? spath_to_json(*cert.tail_cycle) : json(nullptr);
    return j;
}

Property parse_property(const std::string& name) {
    auto p = property_from_name(name);
    if (!p) throw std::invalid_argument("unknown property '" + name + "'");
    return *p;
}

Certificate certificate_from_json(const json& j) {
    Certificate cert;
    cert.property = parse_property(j.at("property").get<std::string>());
    cert.centralized = j.at("centralized").get<bool>();
    cert.observer_names = j.at("observers").get<std::vector<std::string>>();
    for (auto& s : j.at("route")) {
        Certificate::Segment seg;
        seg.kind = kind_from_name(s.at("kind").get<std::string>());
        if (s.contains("observer") && !s.at("observer").is_null())
            seg.observer = s.at("observer").get<int>();
        seg.path.states = s.at("states").get<std::vector<std::vector<std::string>>>();
        seg.path.events = s.at("events").get<std::vector<std::vector<std::string>>>();
        cert.route.push_back(std::move(seg));
    }
    if (j.contains("fault_transition") && !j.at("fault_transition").is_null())
        cert.fault_transition = j.at("fault_transition").get<std::array<std::string, 3>>();
    if (j.contains("tail_path") && !j.at("tail_path").is_null())
        cert.tail_path = spath_from_json(j.at("tail_path"));
    if (j.contains("tail_cycle") && !j.at("tail_cycle").is_null())
        cert.tail_cycle = spath_from_json(j.at("tail_cycle"));
    if (j.contains("observer_tails"))
        for (auto& t : j.at("observer_tails")) {
            Certificate::ObserverTail tail;
            tail.observer = t.at("observer").get<int>();
            tail.path = spath_from_json(t.at("path"));
            tail.cycle = spath_from_json(t.at("cycle"));
            cert.observer_tails.push_back(std::move(tail));
        }
    return cert;
}

json evidence_to_json(const PumpEvidence& ev) {
    json obs = json::array();
    for (auto& o : ev.observers)
        obs.push_back(json{{"observer", o.observer},
                           {"sigma", o.sigma},
                           {"estimate", o.estimate},
                           {"run", o.run},
                           {"continuation", o.continuation}});
    json j{{"k", ev.k}, {"word", ev.word}, {"observers", std::move(obs)}};
    j["fault_event"] = ev.fault_event ? json(*ev.fault_event) : json(nullptr);
    return j;
}

PumpEvidence evidence_from_json(const json& j) {
    PumpEvidence ev;
    ev.k = j.at("k").get<int>();
    ev.word = j.at("word").get<std::vector<std::string>>();
    if (j.contains("fault_event") && !j.at("fault_event").is_null())
        ev.fault_event = j.at("fault_event").get<std::string>();
    for (auto& o : j.at("observers")) {
        PumpEvidence::PerObserver po;
        po.observer = o.at("observer").get<std::string>();
        po.sigma = o.at("sigma").get<std::vector<std::string>>();
        po.estimate = o.at("estimate").get<std::vector<std::string>>();
        po.run = o.at("run").get<std::vector<std::string>>();
        po.continuation = o.at("continuation").get<std::vector<std::string>>();
        ev.observers.push_back(std::move(po));
    }
    return ev;
}

}  // namespace

std::string report_to_json(const Report& report) {
    json j;
    j["assumptions"] = json{{"deadlock_free", report.assumptions.deadlock_free},
                            {"prompt", report.assumptions.prompt}};
    j["certificate"] = report.certificate ? certificate_to_json(*report.certificate) : json(nullptr);
    j["evidence"] = report.evidence ? evidence_to_json(*report.evidence) : json(nullptr);
    j["holds"] = report.holds;
    j["instance"] = json{{"path", report.instance_path}, {"digest", hex_digest(report.digest)}};
    j["note"] = report.note ? json(*report.note) : json(nullptr);
    j["property"] = property_name(report.property);
    j["timing_ms"] = report.timing_ms;
    j["version"] = kToolVersion;
    return j.dump(2) + "\n";
}

ParsedReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
    try {
        ParsedReport out;
        if (j.contains("instance") && j.at("instance").contains("path"))
            out.instance_path = j.at("instance").at("path").get<std::string>();
        out.property = parse_property(j.at("property").get<std::string>());
        out.holds = j.at("holds").get<bool>();
        if (j.contains("certificate") && !j.at("certificate").is_null())
            out.certificate = certificate_from_json(j.at("certificate"));
        if (j.contains("evidence") && !j.at("evidence").is_null())
            out.evidence = evidence_from_json(j.at("evidence"));
        return out;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

std::string provenance_to_json(const Provenance& prov) {
    json j;
    j["reduction"] = prov.reduction;
    j["property"] = prov.property;
    j["sources"] = prov.sources;
    j["notes"] = prov.notes;
    if (prov.expected_holds)
        j["expected"] = json{{"holds", *prov.expected_holds}};
    else
        j["expected"] = nullptr;
    j["witness"] = prov.witness ? json(*prov.witness) : json(nullptr);
    return j.dump(2) + "\n";
}

}  // namespace ccdes
