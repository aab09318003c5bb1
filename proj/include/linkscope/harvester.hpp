#pragma once
// Polling scheduler modeled on the collection setup: periodic tasks over a
// pluggable data source, per-credential per-resource rate budgets with
// fixed 15-minute windows anchored at first use, credential cycling on
// exhaustion, a fan-out cap for second-order collection, and an append-only
// newline-delimited JSON snapshot store.
//
// Time is a simulated minute counter, so runs are deterministic and fully
// testable offline. The shipped data source reads a fixture directory
// (edges.csv + attributes.csv + egos.txt); no live transport is included.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkscope/errors.hpp"
#include "linkscope/graph.hpp"

#include <json.hpp>

namespace linkscope {

enum class Resource { AccountDetails, IdList };

inline const char* resource_name(Resource r) {
    return r == Resource::AccountDetails ? "account_details" : "id_list";
}

struct RateBudget {
    Resource resource = Resource::AccountDetails;
    int window_minutes = 15;
    int max_requests = 15;   // per window per credential
    int payload_cap = 100;   // accounts (details) or ids (id_list) per request
};

inline RateBudget details_budget() { return {Resource::AccountDetails, 15, 15, 100}; }
inline RateBudget id_list_budget() { return {Resource::IdList, 15, 180, 5000}; }

// Splits targets into payload_cap-sized batches covering each exactly once.
inline std::vector<std::vector<NodeId>> plan_requests(const std::vector<NodeId>& targets,
                                                      const RateBudget& budget) {
    std::vector<std::vector<NodeId>> batches;
    for (size_t i = 0; i < targets.size(); i += static_cast<size_t>(budget.payload_cap)) {
        size_t end = std::min(targets.size(), i + static_cast<size_t>(budget.payload_cap));
        batches.emplace_back(targets.begin() + static_cast<long>(i),
                             targets.begin() + static_cast<long>(end));
    }
    return batches;
}

// Collect second-order data only for nodes with fewer than 100K friends and
// fewer than 100K followers ("<100K" is strict).
inline bool cap_fanout(int64_t friend_count, int64_t follower_count) {
    if (friend_count < 0 || follower_count < 0) throw validation_error("counts are non-negative");
    return friend_count < 100000 && follower_count < 100000;
}

// What a task polls. FollowerLinkIds and SecondOrderDetails consume state
// produced by earlier executions (follower sets, link lists).
enum class TargetSelector {
    Honeypots,
    HoneypotFollowerIds,
    FollowerDetails,
    FollowerLinkIds,
    SecondOrderDetails,
};

struct PollTask {
    std::string name;
    Resource resource = Resource::AccountDetails;
    int64_t period_minutes = 60;
    TargetSelector selector = TargetSelector::Honeypots;
};

// The five collection tasks with their stated periods.
inline std::vector<PollTask> default_tasks() {
    return {
        {"honeypot_details", Resource::AccountDetails, 60, TargetSelector::Honeypots},
        {"honeypot_follower_ids", Resource::IdList, 720, TargetSelector::HoneypotFollowerIds},
        {"follower_details", Resource::AccountDetails, 1440, TargetSelector::FollowerDetails},
        {"follower_link_ids", Resource::IdList, 1440, TargetSelector::FollowerLinkIds},
        {"second_order_details", Resource::AccountDetails, 4320, TargetSelector::SecondOrderDetails},
    };
}

struct CredentialPool {
    std::vector<std::string> credentials;

    static CredentialPool of(int n) {
        CredentialPool p;
        for (int i = 0; i < n; ++i) p.credentials.push_back("key" + std::to_string(i));
        return p;
    }
};

// Pluggable source of account data. Implementations may throw io_error to
// model transient failures; the scheduler retries with backoff.
class DataSource {
public:
    virtual ~DataSource() = default;
    virtual std::vector<NodeId> honeypots() const = 0;
    virtual nlohmann::json account_details(const NodeId& id) = 0;
    virtual std::vector<NodeId> follower_ids(const NodeId& id) = 0;
    virtual std::vector<NodeId> friend_ids(const NodeId& id) = 0;
};

// Reads a synth-style directory: edges.csv, attributes.csv, egos.txt.
class FixtureSource : public DataSource {
public:
    explicit FixtureSource(const std::string& dir)
        : graph_(load_edges(dir + "/edges.csv")), attrs_(load_attributes(dir + "/attributes.csv")) {
        std::ifstream in(dir + "/egos.txt");
        if (!in) throw io_error("cannot open " + dir + "/egos.txt");
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (!line.empty()) honeypots_.push_back(line);
        }
        if (honeypots_.empty()) throw validation_error("fixture has no honeypot accounts");
    }

    std::vector<NodeId> honeypots() const override { return honeypots_; }

    nlohmann::json account_details(const NodeId& id) override {
        nlohmann::json j;
        j["id"] = id;
        auto it = attrs_.find(id);
        if (it != attrs_.end()) {
            const auto& a = it->second;
            if (a.followers_count) j["followers_count"] = *a.followers_count;
            if (a.friends_count) j["friends_count"] = *a.friends_count;
            if (a.lang) j["lang"] = *a.lang;
            if (a.created_year) j["created_year"] = *a.created_year;
        }
        // Graph degrees stand in when attributes are absent, so the fan-out
        // cap still has counts to look at.
        if (!j.contains("followers_count") && graph_.has_node(id))
            j["followers_count"] = static_cast<int64_t>(graph_.in_degree(graph_.index_of(id)));
        if (!j.contains("friends_count") && graph_.has_node(id))
            j["friends_count"] = static_cast<int64_t>(graph_.out_degree(graph_.index_of(id)));
        return j;
    }

    std::vector<NodeId> follower_ids(const NodeId& id) override {
        return graph_.has_node(id) ? graph_.followers_of(id) : std::vector<NodeId>{};
    }

    std::vector<NodeId> friend_ids(const NodeId& id) override {
        return graph_.has_node(id) ? graph_.friends_of(id) : std::vector<NodeId>{};
    }

private:
    DirectedGraph graph_;
    AttributeTable attrs_;
    std::vector<NodeId> honeypots_;
};

struct SnapshotRecord {
    int64_t seq = 0;
    int64_t ts = 0;  // simulated minute
    std::string task;
    NodeId target;
    nlohmann::json payload;
    bool ok = true;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["seq"] = seq;
        j["ts"] = ts;
        j["task"] = task;
        j["target"] = target;
        j["payload"] = payload;
        if (!ok) j["error"] = true;
        return j;
    }

    static SnapshotRecord from_json(const nlohmann::json& j) {
        SnapshotRecord r;
        r.seq = j.at("seq").get<int64_t>();
        r.ts = j.at("ts").get<int64_t>();
        r.task = j.at("task").get<std::string>();
        r.target = j.at("target").get<std::string>();
        r.payload = j.at("payload");
        r.ok = !j.value("error", false);
        return r;
    }
};

struct DispatchEntry {
    int64_t minute = 0;
    std::string credential;
    Resource resource;
    int64_t window_index = 0;  // relative to the credential's anchor
};

struct RunStats {
    std::map<std::string, int64_t> executions_per_task;
    int64_t requests_dispatched = 0;
    int64_t deferrals = 0;  // dispatch attempts pushed past a budget wall
    int64_t failures = 0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["executions_per_task"] = executions_per_task;
        j["requests_dispatched"] = requests_dispatched;
        j["deferrals"] = deferrals;
        j["failures"] = failures;
        return j;
    }
};

struct RunResult {
    std::vector<SnapshotRecord> records;
    std::vector<DispatchEntry> dispatch_log;
    RunStats stats;
};

namespace harvest_detail {

enum class ListKind { Followers, Friends };

struct PendingRequest {
    int64_t period = 0;       // priority: shorter first
    int64_t enqueued_at = 0;  // then older first
    int64_t seq = 0;          // stable tiebreak
    std::string task;
    Resource resource = Resource::AccountDetails;
    TargetSelector selector = TargetSelector::Honeypots;
    int64_t exec_index = 0;
    std::vector<NodeId> batch;  // details request
    NodeId target;              // id_list request
    ListKind list = ListKind::Followers;
    int page = 0;
    int attempts = 0;
    int64_t not_before = 0;  // retry backoff gate
};

struct PendingOrder {
    bool operator()(const PendingRequest& a, const PendingRequest& b) const {
        if (a.period != b.period) return a.period < b.period;
        if (a.enqueued_at != b.enqueued_at) return a.enqueued_at < b.enqueued_at;
        return a.seq < b.seq;
    }
};

struct WindowState {
    bool used = false;
    int64_t anchor = 0;
    int64_t window = 0;
    int spent = 0;
};

}  // namespace harvest_detail

// Runs the schedule for `duration_minutes` of simulated time on 1-minute
// ticks. Tasks become due at every multiple of their period; their requests
// drain shortest-period-then-oldest-first under the rate budgets, cycling
// credentials on exhaustion and carrying deferred work into later windows.
inline RunResult run_harvest(const std::vector<PollTask>& tasks, const CredentialPool& pool,
                             DataSource& source, int64_t duration_minutes,
                             const RateBudget& details = details_budget(),
                             const RateBudget& id_lists = id_list_budget()) {
    using namespace harvest_detail;
    if (tasks.empty()) throw validation_error("need at least one task");
    if (pool.credentials.empty()) throw validation_error("need at least one credential");
    for (const auto& t : tasks)
        if (t.period_minutes <= 0) throw validation_error("task period must be positive");

    RunResult result;
    int64_t next_seq = 0;
    int64_t record_seq = 0;

    std::set<NodeId> known_followers;
    std::set<NodeId> second_order_ids;
    std::map<NodeId, std::pair<int64_t, int64_t>> fanout_counts;  // id -> (friends, followers)

    std::vector<PendingRequest> queue;
    std::map<std::pair<std::string, Resource>, WindowState> windows;
    std::map<std::string, int64_t> exec_counter;

    auto budget_for = [&](Resource r) -> const RateBudget& {
        return r == Resource::AccountDetails ? details : id_lists;
    };

    auto select_targets = [&](const PollTask& task) {
        std::vector<NodeId> out;
        switch (task.selector) {
            case TargetSelector::Honeypots:
            case TargetSelector::HoneypotFollowerIds:
                out = source.honeypots();
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
                break;
            case TargetSelector::FollowerDetails:
                out.assign(known_followers.begin(), known_followers.end());
                break;
            case TargetSelector::FollowerLinkIds:
                for (const auto& f : known_followers) {
                    auto it = fanout_counts.find(f);
                    // Unknown counts collect by default; the cap kicks in once
                    // the follower's details have been seen.
                    if (it == fanout_counts.end() ||
                        cap_fanout(it->second.first, it->second.second))
                        out.push_back(f);
                }
                break;
            case TargetSelector::SecondOrderDetails:
                out.assign(second_order_ids.begin(), second_order_ids.end());
                break;
        }
        return out;
    };

    auto enqueue_task = [&](const PollTask& task, int64_t minute) {
        auto targets = select_targets(task);
        if (targets.empty()) return;  // nothing due (dependent state not harvested yet)
        int64_t exec = exec_counter[task.name]++;
        result.stats.executions_per_task[task.name]++;
        auto base = [&] {
            PendingRequest r;
            r.period = task.period_minutes;
            r.enqueued_at = minute;
            r.seq = next_seq++;
            r.task = task.name;
            r.resource = task.resource;
            r.selector = task.selector;
            r.exec_index = exec;
            return r;
        };
        if (task.resource == Resource::AccountDetails) {
            for (auto& batch : plan_requests(targets, budget_for(task.resource))) {
                PendingRequest r = base();
                r.batch = std::move(batch);
                queue.push_back(std::move(r));
            }
        } else {
            for (const auto& t : targets) {
                PendingRequest r = base();
                r.target = t;
                r.list = ListKind::Followers;
                queue.push_back(std::move(r));
                if (task.selector == TargetSelector::FollowerLinkIds) {
                    PendingRequest r2 = base();
                    r2.target = t;
                    r2.list = ListKind::Friends;
                    queue.push_back(std::move(r2));
                }
            }
        }
    };

    // Fixed windows anchored at a credential's first use of the resource;
    // rotation happens only when the current credential's window is spent.
    auto take_budget = [&](Resource res, int64_t minute)
        -> std::optional<std::pair<std::string, int64_t>> {
        const RateBudget& budget = budget_for(res);
        for (const auto& cred : pool.credentials) {
            WindowState& w = windows[{cred, res}];
            if (!w.used) {
                w.used = true;
                w.anchor = minute;
                w.window = 0;
                w.spent = 0;
            } else {
                int64_t idx = (minute - w.anchor) / budget.window_minutes;
                if (idx != w.window) {
                    w.window = idx;
                    w.spent = 0;
                }
            }
            if (w.spent < budget.max_requests) {
                ++w.spent;
                return std::make_pair(cred, w.window);
            }
        }
        return std::nullopt;
    };

    // Executes one granted request. Follow-up pages and retries land in
    // `followups` and join the queue after this minute's drain.
    std::vector<PendingRequest> followups;
    auto fetch = [&](PendingRequest& req, int64_t minute) {
        try {
            if (req.resource == Resource::AccountDetails) {
                for (const auto& id : req.batch) {
                    nlohmann::json dj = source.account_details(id);
                    if (req.selector == TargetSelector::FollowerDetails)
                        fanout_counts[id] = {dj.value("friends_count", int64_t{0}),
                                             dj.value("followers_count", int64_t{0})};
                    SnapshotRecord rec;
                    rec.seq = record_seq++;
                    rec.ts = minute;
                    rec.task = req.task;
                    rec.target = id;
                    rec.payload = std::move(dj);
                    result.records.push_back(std::move(rec));
                }
                return;
            }
            std::vector<NodeId> full = req.list == ListKind::Friends
                                           ? source.friend_ids(req.target)
                                           : source.follower_ids(req.target);
            const RateBudget& budget = budget_for(req.resource);
            size_t begin = static_cast<size_t>(req.page) * static_cast<size_t>(budget.payload_cap);
            size_t end = std::min(full.size(), begin + static_cast<size_t>(budget.payload_cap));
            std::vector<NodeId> ids;
            if (begin < end)
                ids.assign(full.begin() + static_cast<long>(begin), full.begin() + static_cast<long>(end));

            if (req.selector == TargetSelector::HoneypotFollowerIds)
                known_followers.insert(ids.begin(), ids.end());
            if (req.selector == TargetSelector::FollowerLinkIds)
                second_order_ids.insert(ids.begin(), ids.end());

            SnapshotRecord rec;
            rec.seq = record_seq++;
            rec.ts = minute;
            rec.task = req.task;
            rec.target = req.target;
            rec.payload = {{"ids", ids},
                           {"page", req.page},
                           {"exec", req.exec_index},
                           {"list", req.list == ListKind::Friends ? "friends" : "followers"},
                           {"last", end >= full.size()}};
            result.records.push_back(std::move(rec));

            if (end < full.size()) {
                PendingRequest next = req;
                next.seq = next_seq++;
                next.page = req.page + 1;
                next.attempts = 0;
                followups.push_back(std::move(next));
            }
        } catch (const error&) {
            ++req.attempts;
            if (req.attempts >= 3) {
                SnapshotRecord rec;
                rec.seq = record_seq++;
                rec.ts = minute;
                rec.task = req.task;
                rec.target = req.resource == Resource::AccountDetails
                                 ? (req.batch.empty() ? NodeId{} : req.batch.front())
                                 : req.target;
                rec.payload = {{"attempts", req.attempts}};
                rec.ok = false;
                result.records.push_back(std::move(rec));
                ++result.stats.failures;
            } else {
                PendingRequest retry = req;
                retry.seq = next_seq++;
                retry.not_before = minute + (1LL << (req.attempts - 1));  // backoff 1, 2 min
                followups.push_back(std::move(retry));
            }
        }
    };

    for (int64_t minute = 0; minute < duration_minutes; ++minute) {
        for (const auto& task : tasks)
            if (minute % task.period_minutes == 0) enqueue_task(task, minute);

        std::stable_sort(queue.begin(), queue.end(), PendingOrder{});
        std::vector<PendingRequest> waiting;
        followups.clear();
        for (auto& req : queue) {
            if (req.not_before > minute) {
                waiting.push_back(std::move(req));
                continue;
            }
            auto grant = take_budget(req.resource, minute);
            if (!grant) {
                ++result.stats.deferrals;
                waiting.push_back(std::move(req));
                continue;
            }
            result.dispatch_log.push_back({minute, grant->first, req.resource, grant->second});
            ++result.stats.requests_dispatched;
            fetch(req, minute);
        }
        queue = std::move(waiting);
        for (auto& f : followups) queue.push_back(std::move(f));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Snapshot store: one JSON object per line, append-only, seq strictly
// increasing within a run.

inline void write_snapshots(const std::vector<SnapshotRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    for (const auto& r : records) out << r.to_json().dump() << '\n';
}

inline std::vector<SnapshotRecord> read_snapshots(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::vector<SnapshotRecord> records;
    std::string line;
    long ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        try {
            records.push_back(SnapshotRecord::from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad snapshot line: ") + e.what(), ln);
        }
    }
    return records;
}

// One observed follower set: all pages of one honeypot-follower-ids
// execution merged back together. Feeds compare_snapshots directly.
struct FollowerSnapshot {
    NodeId target;
    int64_t exec = 0;
    int64_t ts = 0;  // minute of the last page
    std::vector<NodeId> ids;
};

inline std::vector<FollowerSnapshot> replay_follower_sets(
    const std::vector<SnapshotRecord>& records, const std::string& task_name = "honeypot_follower_ids") {
    std::map<std::pair<NodeId, int64_t>, FollowerSnapshot> groups;
    for (const auto& r : records) {
        if (r.task != task_name || !r.ok) continue;
        if (!r.payload.contains("ids")) continue;
        int64_t exec = r.payload.value("exec", int64_t{0});
        auto& snap = groups[{r.target, exec}];
        snap.target = r.target;
        snap.exec = exec;
        snap.ts = std::max(snap.ts, r.ts);
        for (const auto& id : r.payload["ids"]) snap.ids.push_back(id.get<std::string>());
    }
    std::vector<FollowerSnapshot> out;
    for (auto& [_, snap] : groups) {
        std::sort(snap.ids.begin(), snap.ids.end());
        out.push_back(std::move(snap));
    }
    std::sort(out.begin(), out.end(), [](const FollowerSnapshot& a, const FollowerSnapshot& b) {
        if (a.target != b.target) return a.target < b.target;
        return a.exec < b.exec;
    });
    return out;
}

}  // namespace linkscope
