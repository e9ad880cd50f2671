"""Run ledger: one sqlite row per CLI command that asked to be recorded."""
import json
import logging
import sqlite3
from contextlib import closing
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

DB_PATH = "arckit_runs.db"


def _connect(db_path: Optional[str]) -> sqlite3.Connection:
    return sqlite3.connect(db_path or DB_PATH)


def init_db(db_path: Optional[str] = None) -> None:
    with closing(_connect(db_path)) as conn, conn:
        conn.execute("""
        CREATE TABLE IF NOT EXISTS runs (
          id INTEGER PRIMARY KEY AUTOINCREMENT,
          ts TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
          command TEXT,
          args_json TEXT,
          result_json TEXT,
          exit_code INTEGER
        )
        """)


def save_run(command: str, args: Dict[str, Any], result: Any, exit_code: int,
             db_path: Optional[str] = None) -> int:
    init_db(db_path)
    # the inner `conn` block commits, or rolls back on error; closing() always closes
    with closing(_connect(db_path)) as conn, conn:
        cur = conn.execute("INSERT INTO runs (command, args_json, result_json, exit_code) VALUES (?, ?, ?, ?)",
                           (command, json.dumps(args, ensure_ascii=False, sort_keys=True, default=str),
                            json.dumps(result, ensure_ascii=False, sort_keys=True, default=str), exit_code))
        run_id = cur.lastrowid
    logger.debug("recorded run %d (%s) in %s", run_id, command, db_path or DB_PATH)
    return run_id


def load_runs(limit: int = 20, command: Optional[str] = None, db_path: Optional[str] = None) -> List[Dict[str, Any]]:
    init_db(db_path)
    query = "SELECT id, ts, command, args_json, result_json, exit_code FROM runs"
    params: List[Any] = []
    if command:
        query += " WHERE command = ?"
        params.append(command)
    query += " ORDER BY id DESC LIMIT ?"
    params.append(limit)
    with closing(_connect(db_path)) as conn:
        rows = conn.execute(query, params).fetchall()
    return [{"id": r[0], "ts": r[1], "command": r[2], "args": json.loads(r[3]),
             "result": json.loads(r[4]), "exit_code": r[5]} for r in rows]
