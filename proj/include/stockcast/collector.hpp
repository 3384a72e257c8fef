#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "stockcast/error.hpp"
#include "stockcast/tweet_store.hpp"

namespace stockcast::collector {

using tweet_store::TweetRecord;

// Monotonic instant; tests drive a simulated clock in milliseconds.
using Instant = std::chrono::milliseconds;
using Duration = std::chrono::milliseconds;

class TransportError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

class SinkError : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

class RestartsExhausted : public RuntimeError {
public:
    explicit RestartsExhausted(const std::string& last_error)
        : RuntimeError("collector restart budget exhausted; last error: " + last_error) {}
};

// Sliding-window request budget. At any instant the number of requests
// issued within the trailing window never exceeds `limit`.
struct RateBudget {
    int limit = 180;
    Duration window = std::chrono::minutes(15);
    std::deque<Instant> ledger;
};

struct Decision {
    bool proceed = false;
    Duration wait{0};
};

// Proceed iff the trailing-window count is below the limit; otherwise wait
// until the oldest ledger entry leaves the window. The ledger is updated
// on proceed only.
inline Decision acquire(RateBudget& budget, Instant now) {
    while (!budget.ledger.empty() && budget.ledger.front() <= now - budget.window)
        budget.ledger.pop_front();
    if (int(budget.ledger.size()) < budget.limit) {
        budget.ledger.push_back(now);
        return {true, Duration{0}};
    }
    return {false, budget.ledger.front() + budget.window - now};
}

struct SearchPage {
    std::vector<TweetRecord> records;
    std::optional<std::string> continuation;  // absent on the final page
};

class SearchTransport {
public:
    virtual ~SearchTransport() = default;
    // Answers one page for (query, cursor); throws TransportError on failure.
    virtual SearchPage fetch(const std::string& query,
                             const std::optional<std::string>& cursor) = 0;
};

class RecordSink {
public:
    virtual ~RecordSink() = default;
    virtual void append(const TweetRecord& record) = 0;
    virtual void flush() = 0;
};

struct CollectorState {
    std::string query;
    std::optional<std::string> cursor;
    std::int64_t pages_fetched = 0;
    std::int64_t records_written = 0;
    std::optional<std::string> last_error;
    bool completed = false;
};

class StateStore {
public:
    virtual ~StateStore() = default;
    virtual void save(const CollectorState& state) = 0;
};

class Clock {
public:
    virtual ~Clock() = default;
    virtual Instant now() = 0;
    virtual void sleep_for(Duration d) = 0;
};

// Simulated clock: sleeping advances time instantly, so rate-limit tests
// covering hours run in milliseconds.
class SimClock : public Clock {
public:
    explicit SimClock(Instant start = Instant{0}) : now_(start) {}
    Instant now() override { return now_; }
    void sleep_for(Duration d) override { now_ += d; }
    void advance(Duration d) { now_ += d; }

private:
    Instant now_;
};

class SteadyClock : public Clock {
public:
    Instant now() override {
        return std::chrono::duration_cast<Instant>(
            std::chrono::steady_clock::now().time_since_epoch());
    }
    void sleep_for(Duration d) override { std::this_thread::sleep_for(d); }
};

// ---- state persistence ----------------------------------------------------

inline std::string serialize_state(const CollectorState& s) {
    std::string out = "stockcast-collector-state 1\n";
    out += "query " + s.query + "\n";
    out += "cursor " + (s.cursor ? *s.cursor : std::string("-")) + "\n";
    out += "pages_fetched " + std::to_string(s.pages_fetched) + "\n";
    out += "records_written " + std::to_string(s.records_written) + "\n";
    out += "completed " + std::string(s.completed ? "true" : "false") + "\n";
    out += "last_error " + (s.last_error ? *s.last_error : std::string("-")) + "\n";
    return out;
}

inline CollectorState parse_state(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "stockcast-collector-state 1")
        throw ValidationError("unrecognized collector state header");
    CollectorState s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto space = line.find(' ');
        const std::string key = line.substr(0, space);
        const std::string value = space == std::string::npos ? "" : line.substr(space + 1);
        if (key == "query")
            s.query = value;
        else if (key == "cursor")
            s.cursor = value == "-" ? std::nullopt : std::optional(value);
        else if (key == "pages_fetched")
            s.pages_fetched = std::stoll(value);
        else if (key == "records_written")
            s.records_written = std::stoll(value);
        else if (key == "completed")
            s.completed = value == "true";
        else if (key == "last_error")
            s.last_error = value == "-" ? std::nullopt : std::optional(value);
        else
            throw ValidationError("collector state: unknown key \"" + key + "\"");
    }
    return s;
}

class FileStateStore : public StateStore {
public:
    explicit FileStateStore(std::string path) : path_(std::move(path)) {}
    void save(const CollectorState& state) override {
        std::ofstream out(path_, std::ios::binary | std::ios::trunc);
        if (!out) throw SinkError("cannot write state file: " + path_);
        out << serialize_state(state);
    }
    static std::optional<CollectorState> load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_state(ss.str());
    }

private:
    std::string path_;
};

class JsonlFileSink : public RecordSink {
public:
    explicit JsonlFileSink(const std::string& path) : out_(path, std::ios::binary | std::ios::app) {
        if (!out_) throw SinkError("cannot open sink file: " + path);
    }
    void append(const TweetRecord& record) override {
        out_ << tweet_store::to_jsonl_line(record) << '\n';
        if (!out_) throw SinkError("write to sink failed");
    }
    void flush() override {
        out_.flush();
        if (!out_) throw SinkError("flush of sink failed");
    }

private:
    std::ofstream out_;
};

// ---- the collection loop ---------------------------------------------------

// Pages through the search transport under the rate budget: acquire ->
// fetch -> append records -> persist state, until the continuation token
// is absent. Records are flushed before the state is saved, so a crash
// between the two replays (duplicates) at most one page and never loses
// one. Transport errors are recoverable: they are recorded in the state
// and the caller (the supervisor) decides whether to retry.
inline CollectorState collect(SearchTransport& transport, const std::string& query,
                              CollectorState state, RateBudget& budget, RecordSink& sink,
                              StateStore& store, Clock& clock) {
    state.query = query;
    if (state.completed) return state;

    while (true) {
        Decision d = acquire(budget, clock.now());
        while (!d.proceed) {
            clock.sleep_for(d.wait);
            d = acquire(budget, clock.now());
        }

        SearchPage page;
        try {
            page = transport.fetch(query, state.cursor);
        } catch (const TransportError& e) {
            state.last_error = e.what();
            store.save(state);
            return state;
        }

        for (const auto& rec : page.records) sink.append(rec);
        sink.flush();

        state.pages_fetched += 1;
        state.records_written += std::int64_t(page.records.size());
        state.cursor = page.continuation;
        state.last_error.reset();
        if (!page.continuation) state.completed = true;
        store.save(state);
        if (state.completed) return state;
    }
}

// Reruns collect after recoverable errors with exponential backoff until
// completion or the restart budget runs out. Persisted records survive
// every restart.
inline CollectorState supervise(SearchTransport& transport, const std::string& query,
                                CollectorState state, RateBudget& budget, RecordSink& sink,
                                StateStore& store, Clock& clock, int max_restarts,
                                Duration backoff) {
    state = collect(transport, query, std::move(state), budget, sink, store, clock);
    int restarts = 0;
    while (!state.completed) {
        if (restarts >= max_restarts)
            throw RestartsExhausted(state.last_error.value_or("unknown"));
        clock.sleep_for(backoff * (std::int64_t{1} << restarts));
        ++restarts;
        state = collect(transport, query, std::move(state), budget, sink, store, clock);
    }
    return state;
}

// ---- transports -------------------------------------------------------------

// Deterministic transport driven by a JSON script: an array of pages, each
// an object {"records": [...], "fail_times": N}. The first N fetches of a
// page throw TransportError before it succeeds. Cursors are "page-<i>".
class ScriptedTransport : public SearchTransport {
public:
    explicit ScriptedTransport(const nlohmann::json& script) {
        if (!script.is_object() || !script.contains("pages") || !script.at("pages").is_array())
            throw ValidationError("transport script must be {\"pages\": [...]}");
        for (const auto& entry : script.at("pages")) {
            Page p;
            if (entry.contains("fail_times")) p.fail_times = entry.at("fail_times").get<int>();
            std::string jsonl;
            for (const auto& rec : entry.at("records")) jsonl += rec.dump() + "\n";
            p.records = tweet_store::parse_tweet_jsonl(jsonl);
            pages_.push_back(std::move(p));
        }
    }

    static ScriptedTransport from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open transport script: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(std::string("transport script is not valid JSON: ") +
                                  e.what());
        }
        return ScriptedTransport(j);
    }

    SearchPage fetch(const std::string&, const std::optional<std::string>& cursor) override {
        std::size_t index = 0;
        if (cursor) {
            if (cursor->rfind("page-", 0) != 0)
                throw TransportError("unknown cursor: " + *cursor);
            index = std::stoul(cursor->substr(5));
        }
        if (index >= pages_.size()) throw TransportError("cursor past the last page");
        Page& p = pages_[index];
        if (p.failures_served < p.fail_times) {
            ++p.failures_served;
            throw TransportError("scripted failure on page " + std::to_string(index));
        }
        SearchPage out;
        out.records = p.records;
        if (index + 1 < pages_.size()) out.continuation = "page-" + std::to_string(index + 1);
        return out;
    }

    // Ground truth for the no-loss/no-duplication check.
    std::vector<TweetRecord> all_records() const {
        std::vector<TweetRecord> out;
        for (const auto& p : pages_)
            out.insert(out.end(), p.records.begin(), p.records.end());
        return out;
    }

    std::size_t page_count() const { return pages_.size(); }

private:
    struct Page {
        std::vector<TweetRecord> records;
        int fail_times = 0;
        int failures_served = 0;
    };
    std::vector<Page> pages_;
};

} // namespace stockcast::collector
