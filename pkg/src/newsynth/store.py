"""File-backed session store with a write-ahead journal.

Each session lives in two files under the store root:

  <id>.json     snapshot {"version", "seq", "session": ...}, replaced
                atomically (write temp, fsync, rename) so a crashed
                write never corrupts a valid snapshot
  <id>.journal  append-only JSONL of mutations {"seq", "op", "args"}

A mutation is committed once its journal line is fsynced; the snapshot
then catches up.  Loading replays any journal entries newer than the
snapshot, so a kill between the two writes loses nothing.  A torn final
journal line is an uncommitted mutation and is ignored.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
from pathlib import Path

from .errors import NewsynthError
from .synth import (
    Session,
    choose_blocks,
    choose_labels,
    edit_final,
    session_from_dict,
    session_to_dict,
    synthesize,
)

SNAPSHOT_VERSION = 1


class SessionNotFoundError(NewsynthError):
    code = "session_not_found"

    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"no such session: {session_id!r}")


def new_session_id() -> str:
    """Collision-free random 128-bit token."""
    return secrets.token_hex(16)


def _apply(session: Session, op: str, args: dict) -> None:
    if op == "choose_labels":
        choose_labels(session, args["labels"], now=args["now"])
    elif op == "choose_blocks":
        choose_blocks(
            session, args["label"], args["block_ids"], args.get("edits"), now=args["now"]
        )
    elif op == "synthesize":
        synthesize(session, now=args["now"])
    elif op == "edit_final":
        edit_final(session, args["text"], now=args["now"])
    else:
        raise ValueError(f"unknown journal op: {op!r}")


class SessionStore:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    def _lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.Lock()
            return self._locks[session_id]

    def _snapshot_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def _journal_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.journal"

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def create(self, session: Session) -> None:
        with self._lock(session.session_id):
            self._write_snapshot(session.session_id, 0, session)

    def load(self, session_id: str) -> Session:
        session, _ = self._load_with_seq(session_id)
        return session

    def _load_with_seq(self, session_id: str) -> tuple[Session, int]:
        path = self._snapshot_path(session_id)
        if not path.exists():
            raise SessionNotFoundError(session_id)
        snap = json.loads(path.read_text(encoding="utf-8"))
        if snap.get("version") != SNAPSHOT_VERSION:
            raise ValueError(f"unsupported snapshot version: {snap.get('version')!r}")
        session = session_from_dict(snap["session"])
        seq = snap["seq"]
        for entry in self._read_journal(session_id):
            if entry["seq"] > seq:
                _apply(session, entry["op"], entry["args"])
                seq = entry["seq"]
        return session, seq

    def _read_journal(self, session_id: str) -> list[dict]:
        path = self._journal_path(session_id)
        if not path.exists():
            return []
        entries = []
        with path.open("r", encoding="utf-8") as fh:
            for line in fh:
                try:
                    entries.append(json.loads(line))
                except json.JSONDecodeError:
                    break  # torn final write: not committed
        return entries

    def mutate(self, session_id: str, op: str, args: dict) -> Session:
        """Apply the mutation, journal it, then refresh the snapshot.

        Applying first keeps rejected mutations (domain errors) out of
        the journal entirely; once the journal line is fsynced the
        mutation is committed and replay reproduces it from the
        pre-mutation snapshot.
        """
        with self._lock(session_id):
            session, seq = self._load_with_seq(session_id)
            _apply(session, op, args)
            seq += 1
            entry = {"seq": seq, "op": op, "args": args}
            with self._journal_path(session_id).open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(entry, ensure_ascii=False, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._write_snapshot(session_id, seq, session)
            return session

    def _write_snapshot(self, session_id: str, seq: int, session: Session) -> None:
        payload = {"version": SNAPSHOT_VERSION, "seq": seq, "session": session_to_dict(session)}
        tmp = self._snapshot_path(session_id).with_suffix(".json.tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, ensure_ascii=False, sort_keys=True))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self._snapshot_path(session_id))
