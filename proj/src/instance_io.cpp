#include "ccdes/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ccdes {

using nlohmann::json;

namespace {

const std::vector<std::string> kInstanceFields = {"states",    "initial", "events",      "transitions",
                                                  "observers", "faulty",  "controllable"};

void split_errors(const std::string& what, std::vector<std::string>& errors) {
    std::istringstream is(what);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) errors.push_back(line);
}

bool string_array(const json& j, const char* field, std::vector<std::string>& out,
                  std::vector<std::string>& errors) {
    if (!j.is_array()) {
        errors.push_back(std::string("field '") + field + "' must be an array of strings");
        return false;
    }
    for (auto& el : j) {
        if (!el.is_string()) {
            errors.push_back(std::string("field '") + field + "' must contain only strings");
            return false;
        }
        out.push_back(el.get<std::string>());
    }
    return true;
}

}  // namespace

LoadResult parse_instance(const std::string& json_text) {
    LoadResult res;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        res.errors.push_back(std::string("JSON parse error: ") + e.what());
        return res;
    }
    if (!j.is_object()) {
        res.errors.push_back("instance must be a JSON object");
        return res;
    }
    for (auto& [key, _] : j.items()) {
        if (std::find(kInstanceFields.begin(), kInstanceFields.end(), key) == kInstanceFields.end())
            res.errors.push_back("unknown field '" + key + "'");
    }
    for (auto& req : {"states", "initial", "events", "transitions"}) {
        if (!j.contains(req)) res.errors.push_back(std::string("missing field '") + req + "'");
    }
    if (!res.errors.empty()) return res;

    std::vector<std::string> states, initial, faulty, controllable;
    string_array(j["states"], "states", states, res.errors);
    string_array(j["initial"], "initial", initial, res.errors);
    if (j.contains("faulty")) string_array(j["faulty"], "faulty", faulty, res.errors);
    if (j.contains("controllable"))
        string_array(j["controllable"], "controllable", controllable, res.errors);

    std::vector<std::pair<std::string, std::optional<std::string>>> events;
    if (!j["events"].is_array()) {
        res.errors.push_back("field 'events' must be an array of objects");
    } else {
        for (auto& ev : j["events"]) {
            if (!ev.is_object() || !ev.contains("name") || !ev.contains("label")) {
                res.errors.push_back("each event must be an object with 'name' and 'label'");
                continue;
            }
            for (auto& [key, _] : ev.items()) {
                if (key != "name" && key != "label")
                    res.errors.push_back("unknown field '" + key + "' in event");
            }
            if (!ev["name"].is_string() || !(ev["label"].is_string() || ev["label"].is_null())) {
                res.errors.push_back("event 'name' must be a string and 'label' a string or null");
                continue;
            }
            std::optional<std::string> label;
            if (ev["label"].is_string()) label = ev["label"].get<std::string>();
            events.emplace_back(ev["name"].get<std::string>(), std::move(label));
        }
    }

    std::vector<std::array<std::string, 3>> transitions;
    if (!j["transitions"].is_array()) {
        res.errors.push_back("field 'transitions' must be an array of [src, event, dst] triples");
    } else {
        for (auto& t : j["transitions"]) {
            if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() ||
                !t[2].is_string()) {
                res.errors.push_back("each transition must be a [src, event, dst] string triple");
                continue;
            }
            transitions.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
        }
    }

    std::vector<std::pair<std::string, std::vector<std::string>>> observers;
    if (j.contains("observers")) {
        if (!j["observers"].is_array()) {
            res.errors.push_back("field 'observers' must be an array of objects");
        } else {
            for (auto& o : j["observers"]) {
                if (!o.is_object() || !o.contains("name") || !o.contains("observes")) {
                    res.errors.push_back("each observer must be an object with 'name' and 'observes'");
                    continue;
                }
                for (auto& [key, _] : o.items()) {
                    if (key != "name" && key != "observes")
                        res.errors.push_back("unknown field '" + key + "' in observer");
                }
                if (!o["name"].is_string()) {
                    res.errors.push_back("observer 'name' must be a string");
                    continue;
                }
                std::vector<std::string> seen;
                if (!string_array(o["observes"], "observes", seen, res.errors)) continue;
                observers.emplace_back(o["name"].get<std::string>(), std::move(seen));
            }
        }
    }
    if (!res.errors.empty()) return res;

    try {
        Instance inst{make_fsa(std::move(states), std::move(initial), std::move(events),
                               std::move(transitions), std::move(faulty), std::move(controllable)),
                      {}};
        inst.observers = make_observers(inst.fsa, std::move(observers));
        res.warnings = observer_warnings(inst.fsa, inst.observers);
        res.instance = std::move(inst);
    } catch (const std::invalid_argument& e) {
        split_errors(e.what(), res.errors);
    }
    return res;
}

LoadResult load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        LoadResult res;
        res.errors.push_back("cannot open '" + path.string() + "'");
        return res;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string instance_to_json(const Fsa& fsa, const ObserverSet& observers) {
    json j;
    j["states"] = fsa.states;
    std::vector<std::string> initial;
    for (auto s : fsa.initial) initial.push_back(fsa.state_name(s));
    j["initial"] = initial;
    j["events"] = json::array();
    for (auto& e : fsa.events) {
        json ev;
        ev["name"] = e.name;
        if (e.label)
            ev["label"] = *e.label;
        else
            ev["label"] = nullptr;
        j["events"].push_back(ev);
    }
    j["transitions"] = json::array();
    for (auto& t : fsa.transitions)
        j["transitions"].push_back({fsa.state_name(t.src), fsa.event_name(t.event), fsa.state_name(t.dst)});
    j["observers"] = json::array();
    for (auto& o : observers.observers) {
        json ob;
        ob["name"] = o.name;
        std::vector<std::string> ev;
        for (auto e : o.observes) ev.push_back(fsa.event_name(e));
        ob["observes"] = ev;
        j["observers"].push_back(ob);
    }
    std::vector<std::string> faulty, controllable;
    for (auto e : fsa.faulty) faulty.push_back(fsa.event_name(e));
    for (auto e : fsa.controllable) controllable.push_back(fsa.event_name(e));
    j["faulty"] = faulty;
    j["controllable"] = controllable;
    return j.dump(2) + "\n";
}

}  // namespace ccdes
