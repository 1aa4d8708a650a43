import asyncio
import json

import pytest

from mcp_catenary import server
from mcp_catenary.config import CatenaryConfig


@pytest.fixture(autouse=True)
def sequential_server(monkeypatch):
    monkeypatch.setattr(server, "_config", CatenaryConfig(workers=1))


def test_tool_names():
    names = [tool.name for tool in server.list_tool_definitions()]
    assert names == list(server.TOOL_HANDLERS)
    assert "realize_catenary_set" in names


def test_generators_accept_lists_and_strings():
    from_list = json.loads(server.call_tool_sync("catenary_degree", {"generators": [2, 3], "n": 6}))
    from_text = json.loads(server.call_tool_sync("catenary_degree", {"generators": "2,3", "n": 6}))
    assert from_list["payload"] == from_text["payload"] == {"element": 6, "catenary": 3}


def test_realize_tool():
    reply = json.loads(
        server.call_tool_sync("realize_catenary_set", {"target": [0, 2, 7, 20], "b_list": [51]})
    )
    assert reply["payload"]["final"]["generators"] == [51, 60, 160, 260]


def test_domain_error_is_reported_as_text():
    assert server.call_tool_sync("analyze_monoid", {"generators": [4, 6]}).startswith("NotCofinite: ")


def test_unknown_tool():
    with pytest.raises(ValueError):
        server.call_tool_sync("tap_element", {})


def test_missing_config_file_uses_defaults(monkeypatch, tmp_path):
    monkeypatch.setattr(server, "_config", None)
    monkeypatch.setattr(server, "config_path", tmp_path / "absent.json")
    assert server.get_config() == CatenaryConfig()


def test_tool_runs_off_the_event_loop():
    reply = asyncio.run(asyncio.to_thread(server.call_tool_sync, "glue_monoids", {"g1": [3, 5, 7], "d1": 2, "g2": [1], "d2": 9}))
    assert json.loads(reply)["payload"]["monoid"]["generators"] == [6, 9, 10, 14]
