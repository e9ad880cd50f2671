import sqlite3
from contextlib import closing

import pytest

from arckit import storage
from arckit.storage import init_db, load_runs, save_run


def test_save_and_load(tmp_path):
    db = str(tmp_path / "runs.db")
    init_db(db)
    first = save_run("verify-claims", {"claim": "A"}, {"refuted": True}, 0, db_path=db)
    second = save_run("enumerate", {"kind": "chords"}, {"count": 1}, 0, db_path=db)
    assert second > first
    runs = load_runs(db_path=db)
    assert [r["id"] for r in runs] == [second, first]
    assert runs[1]["args"] == {"claim": "A"}
    assert runs[1]["result"] == {"refuted": True}
    assert runs[1]["ts"]


def test_filter_and_limit(tmp_path):
    db = str(tmp_path / "runs.db")
    for i in range(3):
        save_run("verify-claims", {"i": i}, None, 2 if i else 0, db_path=db)
    save_run("gc", {}, None, 0, db_path=db)
    assert len(load_runs(limit=2, db_path=db)) == 2
    claims = load_runs(command="verify-claims", db_path=db)
    assert [r["args"]["i"] for r in claims] == [2, 1, 0]
    assert [r["exit_code"] for r in claims] == [2, 2, 0]


def test_empty_ledger(tmp_path):
    assert load_runs(db_path=str(tmp_path / "fresh.db")) == []


def test_connections_are_closed_when_a_write_fails(tmp_path, monkeypatch):
    db = str(tmp_path / "runs.db")
    with closing(sqlite3.connect(db)) as conn:
        conn.execute("CREATE TABLE runs (id INTEGER PRIMARY KEY)")
    opened = []

    def connect(db_path):
        conn = _Tracked(sqlite3.connect(db_path))
        opened.append(conn)
        return conn

    monkeypatch.setattr(storage, "_connect", connect)
    with pytest.raises(sqlite3.OperationalError):
        save_run("gc", {}, None, 0, db_path=db)
    assert opened
    assert all(c.closed for c in opened)


class _Tracked:
    def __init__(self, conn):
        self.conn = conn
        self.closed = False

    def execute(self, *args):
        return self.conn.execute(*args)

    def close(self):
        self.closed = True
        self.conn.close()

    def __enter__(self):
        self.conn.__enter__()
        return self

    def __exit__(self, *exc):
        return self.conn.__exit__(*exc)
