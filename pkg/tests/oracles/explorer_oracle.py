"""Hand-coded execution of the ExplorerBot corpus network.

Deliberately independent of the ``arcc`` package: the component logic below is
transcribed by hand from the corpus models and the tick rules (event ports,
instant links, stubs replaying CSV rows, absent past end of file). Running this
script writes the frozen expected-trace fixture.
"""

from __future__ import annotations

import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
CORPUS = HERE.parents[1] / "corpus"
FIXTURE = HERE.parent / "fixtures" / "explorer_trace_30.csv"
TICKS = 30
SPEED = 40  # Translator(40)
LIMIT = 3  # Timer(3)


def read_column(name: str, kind: str) -> list:
    lines = (CORPUS / "traces" / name).read_text().split("\n")[1:]
    if lines and lines[-1] == "":
        lines.pop()
    out = []
    for cell in lines:
        if cell == "":
            out.append(None)
        elif kind == "Int":
            out.append(int(cell))
        else:
            out.append(cell == "true")
    return out


def at(rows: list, t: int):
    return rows[t] if t < len(rows) else None


def run(ticks: int = TICKS) -> list[dict]:
    pressed = read_column("button.csv", "Bool")
    distance = read_column("ultrasonic.csv", "Int")
    stored = read_column("logger.csv", "Bool")
    state, backed, turned = "IDLE", 0, 0
    timer_ticks = 0
    rows = []
    for t in range(ticks):
        row = {}
        button, dist = at(pressed, t), at(distance, t)
        row["button.pressed"] = button
        row["ultraSonic.distance"] = dist
        row["explorationControl/logger.stored"] = at(stored, t)

        # Timer activity
        if timer_ticks >= LIMIT:
            done, timer_ticks = True, 0
        else:
            done, timer_ticks = None, timer_ticks + 1
        row["timer.done"] = done

        # Controller automaton
        cmd = obstacle = None
        if state == "IDLE":
            if button is not None and button:
                state, cmd = "EXPLORING", "FORWARD"
        elif state == "EXPLORING":
            if dist is not None and dist < 20:
                state, cmd, obstacle, backed = "BACKING", "BACKWARD", dist, 1
            elif dist is not None and dist >= 20:
                cmd = "FORWARD"
        elif state == "BACKING":
            if backed < 3:
                cmd, backed = "BACKWARD", backed + 1
            else:
                state, cmd, turned, backed = "TURNING", "TURN_LEFT", 1, 0
        elif state == "TURNING":
            if turned < 2:
                cmd, turned = "TURN_LEFT", turned + 1
            else:
                state, cmd, turned = "EXPLORING", "FORWARD", 0
        row["explorationControl/controller.button"] = button
        row["explorationControl/controller.distance"] = dist
        row["explorationControl/controller.cmd"] = cmd
        row["explorationControl/controller.obstacle"] = obstacle
        row["explorationControl/logger.entry"] = obstacle
        row["explorationControl/logger.flush"] = done

        # Translator automaton
        wheels = {"FORWARD": (SPEED, SPEED), "BACKWARD": (-SPEED, -SPEED), "TURN_LEFT": (-SPEED, SPEED),
                  "TURN_RIGHT": (SPEED, -SPEED), "STOP": (0, 0)}
        left, right = wheels.get(cmd, (None, None))
        row["navigation/translator.cmd"] = cmd
        row["navigation/translator.left"] = left
        row["navigation/translator.right"] = right
        row["navigation/leftMotor.speed"] = left
        row["navigation/rightMotor.speed"] = right
        rows.append(row)
    return rows


def cell(v) -> str:
    if v is None:
        return ""
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def to_csv(rows: list[dict]) -> str:
    columns = sorted(rows[0]) if rows else []
    lines = [",".join(columns)] + [",".join(cell(r[c]) for c in columns) for r in rows]
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    text = to_csv(run())
    if "--check" in sys.argv:
        sys.exit(0 if FIXTURE.read_text() == text else 1)
    FIXTURE.write_text(text)
    print(f"wrote {FIXTURE}")
