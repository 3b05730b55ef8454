import json

import pytest

from newsynth.store import SessionNotFoundError, SessionStore, new_session_id
from newsynth.synth import session_to_dict, synthesize


class TestStore:
    def test_create_load_round_trip(self, tmp_path, mini_session):
        store = SessionStore(tmp_path)
        store.create(mini_session)
        loaded = store.load(mini_session.session_id)
        assert session_to_dict(loaded) == session_to_dict(mini_session)

    def test_unknown_session(self, tmp_path):
        store = SessionStore(tmp_path)
        with pytest.raises(SessionNotFoundError):
            store.load("missing")

    def test_mutations_apply_and_persist(self, tmp_path, mini_session):
        store = SessionStore(tmp_path)
        store.create(mini_session)
        surface = mini_session.labels[0].surface
        store.mutate(
            mini_session.session_id,
            "choose_labels",
            {"labels": [surface], "now": 1.0},
        )
        store.mutate(mini_session.session_id, "synthesize", {"now": 2.0})
        loaded = store.load(mini_session.session_id)
        assert loaded.stage == "SYNTHESIZED"
        assert [s.label.surface for s in loaded.article.sections] == [surface]

    def test_journal_tail_replayed_after_partial_commit(self, tmp_path, mini_session):
        # simulate a crash after the journal fsync but before the snapshot
        # rename: the entry exists only in the journal and must replay
        store = SessionStore(tmp_path)
        store.create(mini_session)
        sid = mini_session.session_id
        surface = mini_session.labels[0].surface
        entry = {
            "seq": 1,
            "op": "choose_labels",
            "args": {"labels": [surface], "now": 5.0},
        }
        with store._journal_path(sid).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry) + "\n")
        loaded = SessionStore(tmp_path).load(sid)
        assert loaded.chosen_labels == [surface]
        assert loaded.updated_at == 5.0

    def test_torn_journal_line_ignored(self, tmp_path, mini_session):
        store = SessionStore(tmp_path)
        store.create(mini_session)
        sid = mini_session.session_id
        with store._journal_path(sid).open("a", encoding="utf-8") as fh:
            fh.write('{"seq": 1, "op": "choose_labels", "args": {"labe')
        loaded = SessionStore(tmp_path).load(sid)
        assert loaded.chosen_labels == []

    def test_snapshot_replace_is_atomic_against_readers(self, tmp_path, mini_session):
        store = SessionStore(tmp_path)
        store.create(mini_session)
        sid = mini_session.session_id
        # snapshot stays valid JSON across repeated mutations
        for i in range(3):
            store.mutate(
                sid,
                "choose_labels",
                {"labels": [mini_session.labels[i % 2].surface], "now": float(i)},
            )
            snap = json.loads(store._snapshot_path(sid).read_text(encoding="utf-8"))
            assert snap["seq"] == i + 1

    def test_replay_equals_direct_application(self, tmp_path, mini_session):
        store = SessionStore(tmp_path)
        store.create(mini_session)
        sid = mini_session.session_id
        surface = mini_session.labels[0].surface
        store.mutate(sid, "choose_labels", {"labels": [surface], "now": 1.0})
        store.mutate(sid, "synthesize", {"now": 2.0})
        store.mutate(sid, "edit_final", {"text": "edited", "now": 3.0})
        from_store = store.load(sid)

        from newsynth.synth import choose_labels, edit_final

        choose_labels(mini_session, [surface], now=1.0)
        synthesize(mini_session, now=2.0)
        edit_final(mini_session, "edited", now=3.0)
        assert session_to_dict(from_store) == session_to_dict(mini_session)

    def test_rejected_mutation_leaves_no_journal_trace(self, tmp_path, mini_session):
        from newsynth.errors import UnknownLabelError

        store = SessionStore(tmp_path)
        store.create(mini_session)
        sid = mini_session.session_id
        with pytest.raises(UnknownLabelError):
            store.mutate(sid, "choose_labels", {"labels": ["ghost"], "now": 1.0})
        # the session stays loadable and untouched
        loaded = SessionStore(tmp_path).load(sid)
        assert loaded.chosen_labels == []
        surface = mini_session.labels[0].surface
        store.mutate(sid, "choose_labels", {"labels": [surface], "now": 2.0})
        assert store.load(sid).chosen_labels == [surface]

    def test_new_session_ids_are_unique_tokens(self):
        ids = {new_session_id() for _ in range(100)}
        assert len(ids) == 100
        assert all(len(i) == 32 for i in ids)
