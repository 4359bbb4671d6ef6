"""HTTP + WebSocket service hosting live human-vs-BPP games.

One session = one human seat against the Bayesian player, many games in a
row, a running score, and per-display-name behaviour learning that lives for
the process lifetime.  State payloads are a pure function of (game, viewer
seat) and never contain the machine's hole card or beliefs before the
showdown.  The wire schema is documented in docs/wire_protocol.md.
"""

import asyncio
import os
import secrets
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .cards import Card
from .decision import CurveParams
from .engine import Action, Game, GameRecord, IllegalActionError, Phase
from .matrices import ActionCountsStore, MatrixSet
from .players import BppPlayer

WIRE_VERSION = 1
HUMAN = 0  # human seat index within a session's games
BPP = 1

DEFAULT_DATA_DIR = "bayespoker_data"


def data_dir() -> Path:
    return Path(os.environ.get("BAYESPOKER_DATA_DIR", DEFAULT_DATA_DIR))


class NewGameRequest(BaseModel):
    display_name: str | None = None
    seed: int | None = None


class ActionSubmit(BaseModel):
    action: str


@dataclass
class Session:
    session_id: str
    display_name: str | None
    rng: np.random.Generator
    bpp: BppPlayer
    game: Game
    net: int = 0
    games_played: int = 0
    records: list[GameRecord] = field(default_factory=list)
    sockets: list[WebSocket] = field(default_factory=list)
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)


def _card_str(c: Card) -> str:
    return str(c)


def state_payload(session: Session) -> dict:
    """Redacted state for the human seat; pure in (game, viewer)."""
    game = session.game
    legal = sorted(a.value for a in game.legal_actions()) if game.to_act == HUMAN else []
    return {
        "session_id": session.session_id,
        "round": game.round_id,
        "pot": game.pot,
        "your_hole": _card_str(game.hole(HUMAN)),
        "your_up": [_card_str(c) for c in game.upcards(HUMAN)],
        "opp_up": [_card_str(c) for c in game.upcards(BPP)],
        "to_act": ("you" if game.to_act == HUMAN else "opponent") if not game.done else None,
        "legal_actions": legal,
        "raises_this_round": game.raises_this_round,
        "history": [
            {"player": "you" if seat == HUMAN else "opponent", "action": act.value, "round": rnd}
            for seat, act, rnd in game.history
        ],
        "phase": game.phase.value,
        "session_net": session.net,
        "games_played": session.games_played,
    }


def result_payload(session: Session, record: GameRecord) -> dict:
    if record.winner is None:
        winner = "tie"
    else:
        winner = "you" if record.winner == HUMAN else "opponent"
    showdown = record.showdown
    return {
        "session_id": session.session_id,
        "winner": winner,
        "your_net": record.nets[HUMAN],
        "opp_hole": _card_str(record.hands[BPP][0]) if showdown else None,
        "opp_hand_type": record.round_types[BPP][3].name if showdown else None,
        "session_net": session.net,
        "games_played": session.games_played,
    }


def envelope(kind: str, payload: dict) -> dict:
    return {"kind": kind, "version": WIRE_VERSION, "payload": payload}


def create_app(
    matrices: MatrixSet,
    curves: CurveParams,
    counts_store: ActionCountsStore | None = None,
    log_dir: Path | None = None,
    frontend_dir: Path | None = None,
) -> FastAPI:
    app = FastAPI(title="bayespoker")
    sessions: dict[str, Session] = {}
    app.state.sessions = sessions  # test hook: lets the suite plant sentinels
    store = counts_store if counts_store is not None else ActionCountsStore()
    logs = log_dir if log_dir is not None else data_dir()

    def new_game(session: Session) -> None:
        session.game = Game(session.rng, seed=None)
        run_bpp(session)

    def run_bpp(session: Session) -> None:
        game = session.game
        while game.phase == Phase.BETTING and game.to_act == BPP:
            action = session.bpp.decide(game.view(BPP))
            game.submit(BPP, action)
        if game.done:
            settle(session)

    def settle(session: Session) -> None:
        record = session.game.record()
        session.records.append(record)
        session.net += record.nets[HUMAN]
        session.games_played += 1
        session.bpp.observe_showdown(record, BPP)
        logs.mkdir(parents=True, exist_ok=True)
        with open(logs / f"session-{session.session_id}.jsonl", "a") as fh:
            fh.write(record.to_json_line() + "\n")

    async def broadcast(session: Session) -> None:
        game = session.game
        messages = [envelope("state", state_payload(session))]
        if game.done:
            messages.append(envelope("result", result_payload(session, session.records[-1])))
        elif game.to_act == HUMAN:
            messages.append(
                envelope(
                    "action_request",
                    {"legal_actions": sorted(a.value for a in game.legal_actions())},
                )
            )
        dead = []
        for ws in session.sockets:
            try:
                for msg in messages:
                    await ws.send_json(msg)
            except Exception:
                dead.append(ws)
        for ws in dead:
            session.sockets.remove(ws)

    def get_session(session_id: str) -> Session | None:
        return sessions.get(session_id)

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post("/games")
    async def create_game(req: NewGameRequest):
        session_id = secrets.token_hex(8)
        rng = np.random.default_rng(req.seed)
        bpp = BppPlayer(
            matrices,
            curves,
            rng,
            counts_store=store,
            opponent_id=req.display_name,
            learning=True,
        )
        session = Session(
            session_id=session_id,
            display_name=req.display_name,
            rng=rng,
            bpp=bpp,
            game=Game(rng),
        )
        sessions[session_id] = session
        async with session.lock:
            run_bpp(session)
        return {"session_id": session_id}

    @app.get("/games/{session_id}")
    async def get_state(session_id: str):
        session = get_session(session_id)
        if session is None:
            return JSONResponse({"error": "unknown session"}, status_code=404)
        return state_payload(session)

    def apply_human_action(session: Session, raw: str) -> tuple[bool, str | None]:
        game = session.game
        if game.done:
            return False, "game is over; request the next deal"
        if game.to_act != HUMAN:
            return False, "not your turn"
        try:
            action = Action(raw)
        except ValueError:
            return False, f"unknown action {raw!r}"
        try:
            game.submit(HUMAN, action)
        except IllegalActionError as e:
            return False, str(e)
        run_bpp(session)
        return True, None

    @app.post("/games/{session_id}/action")
    async def post_action(session_id: str, submit: ActionSubmit):
        session = get_session(session_id)
        if session is None:
            return JSONResponse({"error": "unknown session"}, status_code=404)
        async with session.lock:
            ok, err = apply_human_action(session, submit.action)
            if not ok:
                legal = sorted(a.value for a in session.game.legal_actions())
                return JSONResponse(
                    {"accepted": False, "error": err, "legal_actions": legal}, status_code=400
                )
            await broadcast(session)
            result = (
                result_payload(session, session.records[-1]) if session.game.done else None
            )
            return {"accepted": True, "state": state_payload(session), "result": result}

    @app.post("/games/{session_id}/next")
    async def next_game(session_id: str):
        session = get_session(session_id)
        if session is None:
            return JSONResponse({"error": "unknown session"}, status_code=404)
        async with session.lock:
            if not session.game.done:
                return JSONResponse({"error": "current game still running"}, status_code=409)
            new_game(session)
            await broadcast(session)
            return state_payload(session)

    @app.websocket("/games/{session_id}/stream")
    async def stream(ws: WebSocket, session_id: str):
        session = get_session(session_id)
        if session is None:
            await ws.close(code=4404)
            return
        await ws.accept()
        session.sockets.append(ws)
        try:
            async with session.lock:
                await broadcast(session)
            while True:
                msg = await ws.receive_json()
                kind = msg.get("kind")
                if kind == "next_game":
                    async with session.lock:
                        if not session.game.done:
                            await ws.send_json(
                                envelope("error", {"error": "current game still running"})
                            )
                            continue
                        new_game(session)
                        await broadcast(session)
                    continue
                if kind != "action_submit":
                    await ws.send_json(
                        envelope("error", {"error": f"unsupported message kind {kind!r}"})
                    )
                    continue
                raw = (msg.get("payload") or {}).get("action", "")
                async with session.lock:
                    ok, err = apply_human_action(session, raw)
                    if not ok:
                        legal = sorted(a.value for a in session.game.legal_actions())
                        await ws.send_json(
                            envelope("error", {"error": err, "legal_actions": legal})
                        )
                        continue
                    await broadcast(session)
        except WebSocketDisconnect:
            pass
        finally:
            if ws in session.sockets:
                session.sockets.remove(ws)

    if frontend_dir is not None and (frontend_dir / "index.html").exists():
        # Mounted after the API routes, so /games and friends take precedence.
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="webui")

    return app
