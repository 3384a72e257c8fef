#pragma once

// Thin network adapter behind the SearchTransport interface. Kept out of
// the test suites; everything they need runs against ScriptedTransport.

#include <optional>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "stockcast/collector.hpp"

namespace stockcast::collector {

// Expects GET <path>?q=<query>[&cursor=<token>] to answer
// {"records": [...], "continuation": "tok"} with continuation omitted on
// the final page.
class HttpSearchTransport : public SearchTransport {
public:
    HttpSearchTransport(std::string host, std::string path)
        : client_(host), path_(std::move(path)) {}

    SearchPage fetch(const std::string& query,
                     const std::optional<std::string>& cursor) override {
        httplib::Params params{{"q", query}};
        if (cursor) params.emplace("cursor", *cursor);
        auto res = client_.Get(path_, params, httplib::Headers{});
        if (!res) throw TransportError("http request failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw TransportError("http status " + std::to_string(res->status));

        nlohmann::json body;
        try {
            body = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::parse_error& e) {
            throw TransportError(std::string("bad response body: ") + e.what());
        }
        SearchPage page;
        std::string jsonl;
        for (const auto& rec : body.at("records")) jsonl += rec.dump() + "\n";
        page.records = tweet_store::parse_tweet_jsonl(jsonl);
        if (body.contains("continuation") && body.at("continuation").is_string())
            page.continuation = body.at("continuation").get<std::string>();
        return page;
    }

private:
    httplib::Client client_;
    std::string path_;
};

} // namespace stockcast::collector
