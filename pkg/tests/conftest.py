import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from copygrade.ingest import load_products
from copygrade.lexicon import load_lexicon_dir

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fixture_lex_dir():
    return DATA_DIR / "lexicons"


@pytest.fixture(scope="session")
def fixture_lex(fixture_lex_dir):
    return load_lexicon_dir(fixture_lex_dir)


@pytest.fixture(scope="session")
def golden_records():
    return load_products(DATA_DIR / "golden_records.jsonl", "jsonl")


@pytest.fixture(scope="session")
def golden_expected():
    with open(DATA_DIR / "golden_scores.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def table1_model_rows():
    with open(DATA_DIR / "table1_model_rows.json", encoding="utf-8") as fh:
        return json.load(fh)


class _MockHandler(BaseHTTPRequestHandler):
    """Chat-completion and sentiment endpoints plus failure routes."""

    def do_POST(self):  # noqa: N802 (BaseHTTPRequestHandler naming)
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length) or b"{}")
        self.server.requests.append((self.path, body))
        if self.path == "/v1/chat/completions":
            prompt = body["messages"][0]["content"]
            text = self.server.completion_text
            if "Example1:" in prompt:
                text = text + " Shop now!"
            self._reply(200, {"choices": [{"message": {"content": text}}]})
        elif self.path == "/sentiment":
            self._reply(200, dict(self.server.sentiment_response))
        elif self.path == "/error500":
            self._reply(500, {"error": "boom"})
        elif self.path == "/malformed":
            self._reply(200, {"unexpected": "shape"})
        else:
            self._reply(404, {"error": "no such route"})

    def _reply(self, status, payload):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


@pytest.fixture()
def mock_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _MockHandler)
    server.requests = []
    server.completion_text = "A great gadget the whole family will love."
    server.sentiment_response = {"label": "positive", "score": 0.9}
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    server.base_url = f"http://127.0.0.1:{server.server_port}"
    yield server
    server.shutdown()
    thread.join(timeout=5)
