"""Published benchmark rows used by the acceptance gate.

Each row is (detector, voice[, method], oc, aua, asr, cos) in percent.
HEADLINE_ROWS come from the two summary result tables (evaluation sets of
1000 and 100 items); PER_METHOD_ROWS from the per-method breakdown tables
(1000 items).  Values transcribed once and frozen; the acceptance test
audits the internal OC/AUA/ASR arithmetic of every row.
"""

from __future__ import annotations

# (detector, voice, oc, aua, asr, cos); evaluation set n = 1000
OPEN_SOURCE_ROWS = [
    ('aasist2', 'Kokoro (British Male)', 95.1, 39.9, 58.1, 90.5),
    ('clad', 'Kokoro (British Male)', 96.9, 43.9, 54.7, 91.7),
    ('rawnet2', 'Kokoro (British Male)', 100.0, 98.9, 1.1, 89.5),
    ('aasist2', 'Kokoro (British Female)', 92.4, 30.4, 67.1, 91.3),
    ('clad', 'Kokoro (British Female)', 97.7, 62.4, 36.2, 90.4),
    ('rawnet2', 'Kokoro (British Female)', 92.4, 56.9, 38.4, 90.4),
    ('aasist2', 'Kokoro (American Male)', 90.4, 37.9, 58.0, 91.1),
    ('clad', 'Kokoro (American Male)', 83.3, 43.3, 56.6, 91.5),
    ('rawnet2', 'Kokoro (American Male)', 100.0, 100.0, 0.0, 88.2),
    ('aasist2', 'Kokoro (American Female)', 92.2, 32.6, 64.6, 91.0),
    ('clad', 'Kokoro (American Female)', 98.3, 32.6, 66.9, 92.1),
    ('rawnet2', 'Kokoro (American Female)', 83.2, 20.3, 75.6, 93.3),
    ('aasist2', 'Coqui (Donald Trump)', 85.5, 25.7, 69.9, 93.2),
    ('clad', 'Coqui (Donald Trump)', 98.9, 62.0, 37.3, 92.3),
    ('rawnet2', 'Coqui (Donald Trump)', 99.8, 88.4, 11.4, 90.2),
    ('aasist2', 'Coqui (Elon Musk)', 98.0, 75.9, 22.5, 90.9),
    ('clad', 'Coqui (Elon Musk)', 98.4, 62.1, 36.9, 91.1),
    ('rawnet2', 'Coqui (Elon Musk)', 100.0, 99.9, 0.1, 89.7),
    ('aasist2', 'Coqui (Taylor Swift)', 94.4, 17.0, 82.0, 92.9),
    ('clad', 'Coqui (Taylor Swift)', 95.1, 20.0, 79.0, 92.8),
    ('rawnet2', 'Coqui (Taylor Swift)', 99.7, 88.2, 11.5, 89.5),
    ('aasist2', 'Coqui (Oprah Winfrey)', 98.9, 79.0, 20.1, 91.5),
    ('clad', 'Coqui (Oprah Winfrey)', 99.7, 99.7, 0.0, 90.5),
    ('rawnet2', 'Coqui (Oprah Winfrey)', 95.8, 86.2, 9.9, 91.0),
    ('aasist2', 'F5 (Male)', 88.5, 33.4, 62.2, 92.8),
    ('clad', 'F5 (Male)', 93.2, 7.9, 91.6, 94.6),
    ('rawnet2', 'F5 (Male)', 99.4, 78.0, 21.5, 90.7),
]

# (detector, voice, oc, aua, asr, cos); evaluation set n = 100
COMMERCIAL_ROWS = [
    ('api-a', 'coqui', 100.0, 98.0, 2.0, 85.7),
    ('api-a', 'f5', 99.0, 70.0, 29.3, 86.2),
    ('api-a', 'kokoro', 100.0, 74.0, 26.0, 84.1),
    ('api-a', 'openai', 95.0, 32.0, 66.3, 89.3),
    ('api-b', 'coqui', 100.0, 100.0, 0.0, 87.0),
    ('api-b', 'f5', 100.0, 100.0, 0.0, 87.3),
    ('api-b', 'kokoro', 100.0, 100.0, 0.0, 80.8),
    ('api-b', 'openai', 100.0, 96.0, 4.0, 86.3),
    ('clad', 'openai', 86.0, 4.0, 95.3, 93.4),
]

# (detector, voice, method, oc, aua, asr, cos); evaluation set n = 1000
PER_METHOD_ROWS = [
    ('aasist2', 'Donald Trump', 'BAE', 85.5, 27.3, 68.0, 93.3),
    ('aasist2', 'Donald Trump', 'BertAttack', 85.5, 21.6, 74.7, 93.7),
    ('aasist2', 'Donald Trump', 'PWWS', 85.5, 35.7, 58.2, 94.4),
    ('aasist2', 'Donald Trump', 'TextFooler', 85.5, 18.3, 78.6, 91.3),
    ('aasist2', 'Elon Musk', 'BAE', 98.0, 78.3, 20.1, 91.7),
    ('aasist2', 'Elon Musk', 'BertAttack', 98.0, 76.3, 21.4, 92.3),
    ('aasist2', 'Elon Musk', 'PWWS', 98.0, 79.8, 19.1, 93.6),
    ('aasist2', 'Elon Musk', 'TextFooler', 98.0, 70.3, 28.3, 87.5),
    ('aasist2', 'Oprah Winfrey', 'BAE', 98.9, 79.0, 20.1, 91.8),
    ('aasist2', 'Oprah Winfrey', 'BertAttack', 98.9, 77.1, 22.4, 92.5),
    ('aasist2', 'Oprah Winfrey', 'PWWS', 98.9, 86.2, 12.9, 94.1),
    ('aasist2', 'Oprah Winfrey', 'TextFooler', 98.9, 71.9, 27.3, 88.6),
    ('aasist2', 'Taylor Swift', 'BAE', 94.4, 21.5, 77.2, 92.7),
    ('aasist2', 'Taylor Swift', 'BertAttack', 94.4, 6.2, 93.4, 94.2),
    ('aasist2', 'Taylor Swift', 'PWWS', 94.4, 32.9, 65.2, 93.8),
    ('aasist2', 'Taylor Swift', 'TextFooler', 94.4, 7.5, 92.0, 91.0),
    ('aasist2', 'F5 Male', 'BAE', 88.5, 32.9, 62.8, 92.8),
    ('aasist2', 'F5 Male', 'BertAttack', 88.5, 27.4, 69.0, 93.6),
    ('aasist2', 'F5 Male', 'PWWS', 88.5, 41.5, 53.1, 94.4),
    ('aasist2', 'F5 Male', 'TextFooler', 88.5, 31.9, 64.0, 90.3),
    ('aasist2', 'American Female', 'BAE', 92.2, 37.3, 59.5, 91.7),
    ('aasist2', 'American Female', 'BertAttack', 92.2, 26.9, 70.8, 92.3),
    ('aasist2', 'American Female', 'PWWS', 92.2, 52.5, 43.1, 92.6),
    ('aasist2', 'American Female', 'TextFooler', 92.2, 13.9, 84.9, 87.4),
    ('aasist2', 'American Male', 'BAE', 90.4, 40.3, 55.4, 92.3),
    ('aasist2', 'American Male', 'BertAttack', 90.4, 35.7, 60.5, 92.0),
    ('aasist2', 'American Male', 'PWWS', 90.4, 58.6, 35.2, 93.1),
    ('aasist2', 'American Male', 'TextFooler', 90.4, 17.2, 81.0, 87.0),
    ('aasist2', 'British Female', 'BAE', 92.4, 39.2, 57.6, 92.2),
    ('aasist2', 'British Female', 'BertAttack', 92.4, 22.4, 75.7, 92.1),
    ('aasist2', 'British Female', 'PWWS', 92.4, 47.5, 48.5, 93.2),
    ('aasist2', 'British Female', 'TextFooler', 92.4, 12.5, 86.5, 87.8),
    ('aasist2', 'British Male', 'BAE', 95.1, 41.8, 56.0, 91.5),
    ('aasist2', 'British Male', 'BertAttack', 95.1, 33.8, 64.4, 91.4),
    ('aasist2', 'British Male', 'PWWS', 95.1, 62.1, 34.8, 92.3),
    ('aasist2', 'British Male', 'TextFooler', 95.1, 21.9, 77.0, 86.9),
    ('clad', 'Donald Trump', 'BAE', 98.8, 63.7, 35.6, 91.7),
    ('clad', 'Donald Trump', 'BertAttack', 98.8, 48.2, 51.3, 92.1),
    ('clad', 'Donald Trump', 'PWWS', 99.0, 74.2, 25.1, 93.0),
    ('clad', 'Donald Trump', 'TextFooler', 99.0, 46.2, 53.6, 91.7),
    ('clad', 'Elon Musk', 'BAE', 98.5, 69.8, 29.1, 91.9),
    ('clad', 'Elon Musk', 'BertAttack', 98.1, 47.5, 51.6, 91.4),
    ('clad', 'Elon Musk', 'PWWS', 98.5, 80.4, 18.4, 93.7),
    ('clad', 'Elon Musk', 'TextFooler', 98.5, 50.7, 48.5, 87.5),
    ('clad', 'Oprah Winfrey', 'BAE', 99.7, 99.7, 0.0, 91.3),
    ('clad', 'Oprah Winfrey', 'BertAttack', 99.7, 99.7, 0.0, 91.0),
    ('clad', 'Oprah Winfrey', 'PWWS', 99.7, 99.7, 0.1, 93.3),
    ('clad', 'Oprah Winfrey', 'TextFooler', 99.7, 99.7, 0.0, 86.4),
    ('clad', 'Taylor Swift', 'BAE', 95.1, 24.3, 74.4, 92.9),
    ('clad', 'Taylor Swift', 'BertAttack', 95.1, 14.4, 84.8, 93.6),
    ('clad', 'Taylor Swift', 'PWWS', 95.1, 34.5, 63.7, 93.8),
    ('clad', 'Taylor Swift', 'TextFooler', 95.1, 6.6, 93.1, 91.1),
    ('clad', 'F5 Male', 'BAE', 93.2, 9.8, 89.5, 94.5),
    ('clad', 'F5 Male', 'BertAttack', 93.2, 2.9, 96.9, 95.4),
    ('clad', 'F5 Male', 'PWWS', 93.2, 16.6, 82.2, 94.5),
    ('clad', 'F5 Male', 'TextFooler', 93.2, 2.1, 97.7, 93.9),
    ('clad', 'American Female', 'BAE', 98.3, 37.9, 61.4, 92.3),
    ('clad', 'American Female', 'BertAttack', 98.3, 27.3, 72.2, 92.8),
    ('clad', 'American Female', 'PWWS', 98.3, 48.0, 51.2, 93.8),
    ('clad', 'American Female', 'TextFooler', 98.3, 17.1, 82.6, 89.7),
    ('clad', 'American Male', 'BAE', 99.8, 64.5, 35.4, 91.1),
    ('clad', 'American Male', 'BertAttack', 99.8, 58.9, 41.0, 90.9),
    ('clad', 'American Male', 'PWWS', 34.0, 0.0, 100.0, 98.8),
    ('clad', 'American Male', 'TextFooler', 99.8, 49.8, 50.1, 85.2),
    ('clad', 'British Female', 'BAE', 97.7, 67.3, 31.1, 91.1),
    ('clad', 'British Female', 'BertAttack', 97.7, 57.8, 40.8, 91.0),
    ('clad', 'British Female', 'PWWS', 97.7, 77.7, 20.5, 93.4),
    ('clad', 'British Female', 'TextFooler', 97.7, 46.6, 52.3, 86.0),
    ('clad', 'British Male', 'BAE', 96.9, 48.4, 50.0, 92.2),
    ('clad', 'British Male', 'BertAttack', 96.9, 39.2, 59.5, 91.8),
    ('clad', 'British Male', 'PWWS', 96.9, 59.1, 39.0, 93.6),
    ('clad', 'British Male', 'TextFooler', 96.9, 28.9, 70.2, 89.2),
    ('rawnet2', 'Donald Trump', 'BAE', 99.8, 88.6, 11.2, 91.2),
    ('rawnet2', 'Donald Trump', 'BertAttack', 99.8, 87.5, 12.7, 89.8),
    ('rawnet2', 'Donald Trump', 'PWWS', 99.8, 91.2, 8.6, 93.0),
    ('rawnet2', 'Donald Trump', 'TextFooler', 99.8, 85.3, 14.5, 86.3),
    ('rawnet2', 'Elon Musk', 'BAE', 100.0, 99.9, 0.1, 90.8),
    ('rawnet2', 'Elon Musk', 'BertAttack', 100.0, 99.9, 0.1, 91.5),
    ('rawnet2', 'Elon Musk', 'PWWS', 100.0, 99.9, 0.1, 93.1),
    ('rawnet2', 'Elon Musk', 'TextFooler', 100.0, 99.8, 0.2, 85.2),
    ('rawnet2', 'Oprah Winfrey', 'BAE', 95.8, 86.7, 9.4, 91.9),
    ('rawnet2', 'Oprah Winfrey', 'BertAttack', 95.8, 84.1, 12.2, 91.4),
    ('rawnet2', 'Oprah Winfrey', 'PWWS', 95.8, 90.8, 5.2, 93.7),
    ('rawnet2', 'Oprah Winfrey', 'TextFooler', 95.8, 83.4, 12.9, 87.0),
    ('rawnet2', 'Taylor Swift', 'BAE', 99.7, 93.3, 7.4, 92.3),
    ('rawnet2', 'Taylor Swift', 'BertAttack', 99.7, 82.1, 18.3, 87.5),
    ('rawnet2', 'Taylor Swift', 'PWWS', 99.7, 94.8, 4.9, 93.2),
    ('rawnet2', 'Taylor Swift', 'TextFooler', 99.7, 81.7, 18.1, 85.8),
    ('rawnet2', 'F5 Male', 'BAE', 99.4, 79.1, 20.5, 91.3),
    ('rawnet2', 'F5 Male', 'BertAttack', 99.4, 69.3, 30.3, 91.3),
    ('rawnet2', 'F5 Male', 'PWWS', 99.4, 86.0, 13.6, 93.6),
    ('rawnet2', 'F5 Male', 'TextFooler', 99.4, 77.7, 21.9, 86.3),
    ('rawnet2', 'American Female', 'BAE', 83.2, 21.9, 73.7, 93.9),
    ('rawnet2', 'American Female', 'BertAttack', 83.2, 16.1, 80.6, 94.1),
    ('rawnet2', 'American Female', 'PWWS', 83.2, 36.1, 56.7, 94.4),
    ('rawnet2', 'American Female', 'TextFooler', 83.2, 7.0, 91.6, 90.7),
    ('rawnet2', 'American Male', 'BAE', 100.0, 100.0, 0.0, 88.6),
    ('rawnet2', 'American Male', 'BertAttack', 100.0, 100.0, 0.0, 90.6),
    ('rawnet2', 'American Male', 'PWWS', 100.0, 100.0, 0.0, 92.9),
    ('rawnet2', 'American Male', 'TextFooler', 100.0, 100.0, 0.0, 83.5),
    ('rawnet2', 'British Female', 'BAE', 92.4, 62.2, 32.7, 91.8),
    ('rawnet2', 'British Female', 'BertAttack', 92.4, 45.4, 50.9, 91.0),
    ('rawnet2', 'British Female', 'PWWS', 92.4, 75.0, 18.7, 93.2),
    ('rawnet2', 'British Female', 'TextFooler', 92.4, 45.1, 51.2, 85.7),
    ('rawnet2', 'British Male', 'BAE', 100.0, 99.4, 0.6, 90.6),
    ('rawnet2', 'British Male', 'BertAttack', 100.0, 96.8, 3.2, 90.1),
    ('rawnet2', 'British Male', 'PWWS', 100.0, 99.9, 0.1, 92.9),
    ('rawnet2', 'British Male', 'TextFooler', 100.0, 99.6, 0.4, 84.5),
]

HEADLINE_ROWS = OPEN_SOURCE_ROWS + COMMERCIAL_ROWS

# Rows whose printed ASR contradicts their own printed OC/AUA pair by more
# than 0.1 percentage point (transcription checked character by character;
# the deviation is in the published numbers themselves).  Keyed by row
# identity, value = |identity ASR - printed ASR| rounded to 1e-4.
MISPRINTED_ASR = {
    ('clad', 'Kokoro (American Male)'): 8.5808,
    ('rawnet2', 'Coqui (Oprah Winfrey)'): 0.1209,
    ('aasist2', 'Elon Musk', 'BertAttack'): 0.7429,
    ('aasist2', 'Elon Musk', 'PWWS'): 0.5286,
    ('aasist2', 'Oprah Winfrey', 'BertAttack'): 0.3575,
    ('clad', 'Donald Trump', 'TextFooler'): 0.2667,
    ('rawnet2', 'Donald Trump', 'BertAttack'): 0.3754,
    ('rawnet2', 'Taylor Swift', 'BAE'): 0.9807,
    ('rawnet2', 'Taylor Swift', 'BertAttack'): 0.647,
    ('rawnet2', 'F5 Male', 'PWWS'): 0.1191,
    ('rawnet2', 'British Female', 'PWWS'): 0.1312,
}
