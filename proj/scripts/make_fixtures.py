#!/usr/bin/env python3
"""Generates the small deterministic pipeline fixtures:

  fixtures/prices_small.csv       60 trading days of OHLCV
  fixtures/tweets_small.jsonl     a few posts per calendar day
  fixtures/collector_script.json  scripted transport: 3 pages, one retry
"""

import json
import math
import random
import sys

POS_WORDS = ["good", "great", "strong", "rally", "win", "profit", "love", "excellent"]
NEG_WORDS = ["bad", "weak", "crash", "loss", "terrible", "fail", "horrible", "fear"]
FILLER = ["the", "stock", "market", "today", "shares", "trading", "price", "chart"]

WEEKDAYS = (0, 1, 2, 3, 4)


def next_day(y, m, d):
    days_in = [31, 29 if y % 4 == 0 and (y % 100 != 0 or y % 400 == 0) else 28, 31, 30,
               31, 30, 31, 31, 30, 31, 30, 31]
    d += 1
    if d > days_in[m - 1]:
        d = 1
        m += 1
        if m > 12:
            m = 1
            y += 1
    return y, m, d


def weekday(y, m, d):
    # Zeller, 0=Monday
    t = [0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4]
    yy = y - 1 if m < 3 else y
    w = (yy + yy // 4 - yy // 100 + yy // 400 + t[m - 1] + d) % 7
    return (w + 6) % 7


def main():
    rng = random.Random(20190523)
    y, m, d = 2019, 5, 23

    price_rows = []
    tweet_lines = []
    close = 200.0
    trading_days = 0
    while trading_days < 60:
        date = f"{y:04d}-{m:02d}-{d:02d}"
        is_trading = weekday(y, m, d) in WEEKDAYS

        mood = math.sin(trading_days / 7.0) + rng.gauss(0, 0.4)
        n_posts = rng.randint(2, 5)
        for k in range(n_posts):
            words = []
            for _ in range(rng.randint(3, 7)):
                if rng.random() < 0.35:
                    pool = POS_WORDS if (mood + rng.gauss(0, 0.5)) > 0 else NEG_WORDS
                    words.append(rng.choice(pool))
                else:
                    words.append(rng.choice(FILLER))
            tweet_lines.append(json.dumps({
                "created_at": f"{date}T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:{rng.randint(0, 59):02d}Z",
                "text": " ".join(words),
                "favorite_count": rng.randint(0, 500),
                "follower_count": rng.randint(10, 200000),
                "retweet_count": rng.randint(0, 100),
                "verified": rng.random() < 0.2,
            }, separators=(",", ":")))

        if is_trading:
            drift = 0.4 * mood + rng.gauss(0, 1.5)
            new_close = max(20.0, close + drift)
            open_ = close + rng.gauss(0, 0.8)
            high = max(open_, new_close) + abs(rng.gauss(0, 1.0))
            low = min(open_, new_close) - abs(rng.gauss(0, 1.0))
            low = max(low, 1.0)
            volume = rng.randint(5_000_000, 30_000_000)
            price_rows.append(
                f"{date},{open_:.2f},{high:.2f},{low:.2f},{new_close:.2f},{new_close:.2f},{volume}")
            close = new_close
            trading_days += 1

        y, m, d = next_day(y, m, d)

    with open("fixtures/prices_small.csv", "w") as f:
        f.write("Date,Open,High,Low,Close,Adj Close,Volume\n")
        f.write("\n".join(price_rows) + "\n")
    with open("fixtures/tweets_small.jsonl", "w") as f:
        f.write("\n".join(tweet_lines) + "\n")

    pages = []
    for p in range(3):
        records = []
        for i in range(20):
            records.append({
                "created_at": f"2020-06-{(p + 1):02d}T{10 + i % 12:02d}:00:00Z",
                "text": f"collected post page{p} item{i} "
                        + rng.choice(POS_WORDS + NEG_WORDS),
                "favorite_count": rng.randint(0, 50),
                "follower_count": rng.randint(0, 5000),
                "retweet_count": rng.randint(0, 25),
                "verified": i % 5 == 0,
            })
        entry = {"records": records}
        if p == 1:
            entry["fail_times"] = 1  # exercised by the supervisor retry
        pages.append(entry)
    with open("fixtures/collector_script.json", "w") as f:
        json.dump({"pages": pages}, f, indent=1)

    print(f"{len(price_rows)} price rows, {len(tweet_lines)} tweets, "
          f"{len(pages)} scripted pages")


if __name__ == "__main__":
    sys.exit(main())
