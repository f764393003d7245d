#pragma once

// Bundled long-form character descriptions. Each "[trait]" header is
// followed by one description per line; every description is exactly four
// sentences, each ending in the line's only periods, and always refers to
// the character as singular "they".

#include <string_view>

namespace slotprobe {

inline constexpr std::string_view kDescriptionCorpus = R"corpus(
[athletic]
They wake before sunrise to run along the river trail in every season. Their legs carry them up steep hills without any sign of strain. They keep a pair of worn sneakers by the door at all times. Weekends usually find them on a soccer field or a climbing wall.
They have a shelf crowded with medals from races across the region. Their morning routine includes a long swim at the public pool. They treat the stairs as a chance to train rather than a chore. Friends call them first whenever a pickup game needs one more player.
They can hold a plank long after everyone else in the gym has collapsed. Their shoulders are broad from years of rowing on the lake. They plan vacations around mountain trails and whitewater rivers. A day without movement leaves them restless and irritable.
They coach a youth basketball team on weekday evenings. Their jump shot still draws cheers from the kids in the gym. They stretch carefully before and after every practice. The bike rack at their office is where their commute ends each morning.
They once carried a heavy canoe across a long portage without stopping. Their calves are hard as stone from years of cycling. They count rest days as part of a serious training schedule. Marathon season is the highlight of their calendar.
They hit the tennis court three times a week regardless of the weather. Their reflexes make them a fierce opponent at the net. They keep a jump rope in their bag for spare moments. Long hikes with a heavy pack feel like a holiday to them.
They learned to surf as a teenager and still paddle out at dawn. Their balance on a board looks effortless to people on the beach. They spend winter evenings doing pull-ups in the garage. A sprint to catch the bus barely raises their heart rate.
They volunteer to move furniture for anyone on the block. Their grip strength surprises people who shake their hand. They track every workout in a battered notebook. Cold mornings never stop them from heading out for a long ride.
They play goalkeeper for a local club and rarely miss a match. Their dives across the goal mouth are the stuff of local legend. They eat carefully during the season to keep their energy high. Even on holiday they seek out a pool or a track.
They finished a triathlon last summer with time to spare. Their routine mixes weights, sprints, and long swims. They feel most alive when their muscles are burning. The climbing gym staff know them by name.
[analytical]
They keep a running tally of how long each errand takes and look for ways to shorten it. Their notebooks are full of tables comparing options that others would simply guess between. They distrust any claim that arrives without numbers behind it. Puzzles with a hidden pattern hold their attention for hours.
They read the fine print of every contract before signing anything. Their spreadsheets track expenses down to the smallest coin. They enjoy breaking a messy problem into small testable pieces. A confusing result makes them more curious rather than frustrated.
They keep a whiteboard in their kitchen covered with diagrams. Their first reaction to a rumor is to ask where the data came from. They can spot a flaw in an argument within minutes. Chess problems are their favorite way to relax after work.
They compare every product review before buying even a toaster. Their friends bring them tangled questions about loans and budgets. They weigh each decision by listing costs and benefits in two columns. Clear logic satisfies them more than a lucky outcome.
They notice when a chart has a misleading axis. Their emails often include bullet points and careful definitions. They test a new recipe by changing only one ingredient at a time. Vague instructions bother them until they work out every step.
They spend lunch breaks working through logic puzzles in a thick book. Their mind naturally sorts information into categories and rules. They ask precise questions that make meetings more productive. A good proof gives them a quiet thrill.
They track the weather against their mood to look for a correlation. Their bookshelf holds statistics texts next to mystery novels. They enjoy finding the single cause behind a chain of errors. Sloppy reasoning in the news makes them sigh out loud.
They approach a broken appliance by ruling out causes one by one. Their careful diagnosis usually finds the fault before the repair manual does. They like to sleep on a decision before committing to it. Patterns in data seem to jump out at them.
They built a model to predict the best time to leave for work. Their calendar is organized by estimated effort rather than deadline alone. They rarely accept the first explanation offered for anything. Precise measurement feels like a form of honesty to them.
They question every assumption in a plan before agreeing to it. Their analysis of a problem often surprises people with its depth. They keep a log of small experiments in their own habits. A neat chain of reasoning is their idea of beauty.
[creative]
They fill the margins of every notebook with tiny sketches of imaginary creatures. Their apartment is crowded with half-finished canvases and jars of brushes. They turn ordinary walks into stories about the strangers they pass. New ideas arrive faster than any notebook can hold.
They rearrange their furniture whenever inspiration strikes. Their wardrobe mixes thrift store finds into bold combinations. They write short songs about the neighborhood cats. A blank page feels like an invitation to them rather than a threat.
They built a working lamp out of driftwood and old bottles. Their kitchen experiments produce dishes that nobody has a name for. They sketch on napkins while waiting for coffee. Galleries and craft fairs are their favorite weekend outings.
They invent board games for their nieces and nephews every holiday. Their stories at dinner parties always have an unexpected twist. They see shapes and faces in clouds and cracks in the pavement. Making something new is how they unwind after a long day.
They paint murals on the walls of local cafes. Their color choices are daring in a way that somehow works. They keep a box of odd scraps that might become art someday. An empty afternoon usually ends with a new project in progress.
They compose melodies on an old piano in their living room. Their poems appear in a small local magazine every season. They find ways to decorate even the most practical objects. Rules in art seem to them like suggestions to play with.
They design costumes for a community theater group. Their sewing table is buried under fabric in every color. They imagine entire worlds while riding the train. Friends ask them for help whenever a party needs a theme.
They turn broken pottery into elaborate mosaics. Their garden is arranged like a painting rather than in neat rows. They keep a dream journal and mine it for story ideas. Ordinary routines bore them unless they can add a twist.
They make short films with a phone and a handful of friends. Their editing choices give even silly scenes a sense of wonder. They collect interesting sounds on walks through the city. A new medium always tempts them to experiment.
They carve small figures from wood during quiet evenings. Their handmade cards are kept by everyone who receives one. They dream up inventions that solve problems nobody noticed. Originality matters more to them than polish.
[organized]
They label every shelf in their pantry with neat handwritten tags. Their calendar is color coded by work, family, and errands. They pack for trips using a checklist they refined over years. Clutter on a desk makes them uneasy until it is sorted.
They keep receipts filed by month in a slim accordion folder. Their inbox rarely holds more than a handful of unread messages. They plan meals for the whole week every Sunday afternoon. Last minute chaos is something they work hard to avoid.
They arrive at meetings with an agenda already printed. Their closet is arranged by season and then by color. They always know where the spare keys and batteries are. Deadlines feel manageable to them because every task gets split into steps.
They maintain a single list of every task in their life. Their garage has pegboards with outlines drawn around each tool. They set reminders days ahead of important dates. Friends borrow their planning templates for weddings and moves.
They sort the mail the moment it arrives. Their desk drawers hold labeled trays for every kind of supply. They review their budget at the end of each month. Lost items almost never happen in their household.
They schedule errands in an order that saves the most driving. Their travel documents sit in one clear folder before every trip. They clean the kitchen before going to bed each night. A tidy system gives them a sense of calm.
They keep a binder with manuals for every appliance they own. Their bookshelves are sorted by subject and then by author. They track appointments for the whole family without missing one. Messy handoffs at work push them to write better procedures.
They prepare their outfit and lunch the evening before work. Their digital files live in a careful tree of named folders. They write down every password hint in a locked notebook. Surprises are rarer for them because they plan ahead.
They run the office supply closet with a simple inventory sheet. Their moving boxes were labeled by room and numbered in order. They like to finish one task completely before starting another. Colleagues rely on them to remember what was agreed.
They keep spare envelopes, stamps, and tape in one marked box. Their weekly review happens every Friday without fail. They store seasonal decorations in clear bins with lists on the lids. Structure helps them feel free rather than boxed in.
[social]
They know the names of every barista on their street. Their phone buzzes constantly with invitations to dinners and parties. They strike up conversations with strangers in line at the grocery store. A quiet weekend alone leaves them eager to see people again.
They host a potluck at their home on the first Friday of every month. Their laugh carries across crowded rooms. They remember birthdays and show up with small gifts. New neighbors usually meet them within a day of moving in.
They organize the office trivia team and never miss a night. Their stories make even shy coworkers join the conversation. They keep in touch with friends from every school they attended. Crowded festivals energize them rather than wear them out.
They volunteer to greet newcomers at the community center. Their calendar fills with coffee dates weeks in advance. They introduce people who they think should know each other. A party feels incomplete to them until everyone is talking.
They chat with the bus driver on the way to work. Their group chats are lively from morning until late at night. They join clubs mostly for the company rather than the hobby. Hearing about other lives fascinates them.
They plan reunions for their old soccer team every year. Their front porch is a gathering spot for the whole street. They rarely eat lunch alone at work. Meeting someone new is the highlight of their week.
They throw themselves into every neighborhood block party. Their easy warmth puts nervous guests at ease. They can talk with anyone from toddlers to grandparents. Silence in a room feels to them like a problem to solve.
They join every group trip that their friends propose. Their contacts list is long and full of detailed notes. They call friends just to hear how the day went. Shared meals are their favorite way to spend an evening.
They spend weekends at game nights, concerts, and picnics. Their friendships span many ages and professions. They remember small details that people mention in passing. Working from home alone drains their energy quickly.
They lead the welcome committee at their apartment building. Their laughter is the first thing visitors notice at parties. They ask thoughtful questions that keep conversations flowing. Being around people recharges them like nothing else.
[patient]
They can wait in a long line without checking the time once. Their voice stays soft when a child asks the same question again. They tend a bonsai tree that will take decades to mature. Delays rarely ruffle them.
They taught an elderly neighbor to use a smartphone over many slow afternoons. Their calm tone makes frustrated customers relax. They let bread dough rise for as long as the recipe needs. Hurrying feels pointless to them in most situations.
They spend months restoring an old clock piece by piece. Their students say they explain things until everyone understands. They listen to long stories without interrupting. Traffic jams give them time to enjoy a podcast.
They fish for hours on the lake without a single bite and still smile. Their garden grows slowly from seeds rather than bought plants. They wait for the right moment to raise a difficult topic. Rushing others is something they simply do not do.
They assemble thousand piece puzzles over many quiet evenings. Their replies to angry emails are measured and kind. They give new coworkers room to learn from mistakes. Good things seem to them worth waiting for.
They train a stubborn puppy with gentle repetition. Their answers to toddlers are as calm on the tenth time as the first. They save slowly for big purchases rather than borrowing. Long waits at the doctor barely bother them.
They knit elaborate sweaters that take a whole winter. Their friends trust them to sit through long hospital visits. They let disagreements cool before responding. Slow progress does not discourage them.
They wait out storms on the porch rather than fretting indoors. Their tutoring sessions never feel rushed. They read long novels one careful chapter at a time. Small setbacks seem temporary to them.
They nurse injured birds back to health over many weeks. Their tone stays even when plans fall apart. They repeat instructions without a trace of irritation. Change that comes slowly still counts as change to them.
They practice the same piano passage until it flows. Their coworkers bring them the most tedious tasks without guilt. They can sit with a hard problem for days. Impatience in others amuses rather than annoys them.
[brave]
They once pulled a stranger out of a freezing river without hesitating. Their hands stay steady during emergencies. They speak up when they see someone treated unfairly. Fear shows up for them but never gets the final word.
They volunteer for the night shift on the rescue boat. Their first solo trip took them across a country where they knew no one. They stand up to loud bullies on the subway. Risky moments seem to sharpen their focus.
They climbed back onto a horse right after a bad fall. Their coworkers look to them when a tense meeting needs someone to speak. They walk toward smoke to see if anyone needs help. Dangerous jobs never seemed to scare them away.
They faced a room of critics and defended an unpopular idea. Their voice stays calm when storms knock out the power. They were the first to try skydiving among their friends. Difficult conversations feel necessary to them rather than avoidable.
They stepped between two arguing strangers to calm things down. Their hiking trips take them onto exposed ridges. They admitted a serious mistake to their whole team. Courage seems to come naturally to them.
They moved across the ocean with a single suitcase. Their instinct is to help when others freeze. They report problems even when it might cost them. Scary challenges draw them in rather than push them away.
They chased off a thief who grabbed an old woman's bag. Their friends call them when something frightening happens. They take on the tasks that make others nervous. Uncertainty rarely stops them from acting.
They volunteer with the fire brigade on weekends. Their calm in a crisis reassures everyone nearby. They tried public speaking despite a deep fear of it. Danger seems to them like a problem to handle rather than escape.
They confronted a landlord who was mistreating tenants. Their first reaction to a loud crash is to run toward it. They explore dark caves with only a headlamp. Standing firm under pressure is part of who they are.
They spoke against their own boss to protect a coworker. Their legs never shake on tall ladders or narrow ledges. They learned to swim in open water as an adult. Hard choices do not make them flinch.
[honest]
They return extra change to cashiers even when it is only a coin. Their reviews of friends' work are kind but always truthful. They admit when they do not know an answer. Small lies feel heavy to them.
They told their manager about an error that nobody else had noticed. Their promises are rare but always kept. They correct people who give them more credit than they deserve. Hidden agendas make them uncomfortable.
They found a wallet on the train and mailed it back to the owner. Their taxes are filed carefully without any shortcuts. They tell friends when spinach is stuck in their teeth. Straight answers come more easily to them than flattery.
They refuse to fake a sick day even when they are tired. Their words and actions rarely diverge. They explain the real reason when they decline an invitation. Trust seems to follow them wherever they go.
They confessed to breaking a neighbor's window as a child. Their feedback at work is direct and fair. They will not sign a report that contains a false number. Exaggeration feels to them like a small betrayal.
They tell customers when a cheaper product would be a better fit. Their apologies are specific and sincere. They keep secrets but never invent stories. Being believed matters deeply to them.
They report every hour they work and nothing more. Their friends know a compliment from them is real. They point out flaws in their own plans before anyone asks. Honesty is the rule they return to in every dilemma.
They handed back a test that had been graded too generously. Their openness about mistakes makes others comfortable admitting errors. They refuse to gossip about absent coworkers. A clear conscience matters more to them than an easy win.
They told a buyer about the scratch on the car before the sale. Their word is accepted without any written contract. They say no plainly rather than making excuses. Deceiving others is something they simply cannot do.
They gave up a prize when they discovered a scoring mistake. Their answers to hard questions are frank but gentle. They correct the record when a rumor favors them unfairly. Truth feels to them like the only solid ground.
[curious]
They take apart old radios just to see how the pieces fit together. Their browser is always crowded with tabs on unrelated topics. They ask strangers about unusual jobs and listen to every detail. A locked door makes them wonder what is behind it.
They visit a new museum in every city they pass through. Their questions often lead conversations in unexpected directions. They read the footnotes in books to find new sources. Unfamiliar foods tempt them more than old favorites.
They keep a notebook of questions they want to answer someday. Their weekends often begin with a trip to the library. They watch documentaries about deep sea creatures late into the night. Learning how things work never gets old for them.
They follow ant trails across the yard to find the nest. Their children inherited a habit of asking why about everything. They sign up for classes in subjects they know nothing about. A strange noise in the engine fascinates more than worries them.
They tour factories whenever a guided visit is offered. Their shelves hold books on astronomy, cooking, and ancient languages. They read instruction manuals just for fun. New places make them eager to wander side streets.
They ask the mechanic to explain every repair in detail. Their travel plans include unplanned days to explore. They look up the origin of unusual words they hear. Mysteries of any kind pull at their attention.
They peek into hidden courtyards while walking through old towns. Their kitchen is full of spices they bought to test. They chat with experts at conferences far outside their field. An unanswered question keeps them awake some nights.
They collect fossils and research each one carefully. Their search history jumps from volcanoes to medieval law. They try every new gadget at least once. Odd facts delight them more than most gifts.
They follow rivers upstream to find each source. Their conversations often end with plans to look something up. They learned to identify dozens of birds by song alone. The unknown feels like an invitation to them.
They take night classes in geology and music theory. Their friends send them articles about strange discoveries. They ask elderly relatives about life decades ago. Wondering how things could be different is a favorite pastime of theirs.
[nurturing]
They keep a drawer of bandages and snacks for any child who visits. Their houseplants thrive under careful daily attention. They check on sick friends with soup and gentle notes. Looking after others seems as natural to them as breathing.
They foster kittens until each one finds a good home. Their advice to younger coworkers is warm and encouraging. They remember which friends need extra support in hard seasons. A crying child always gets their full attention.
They cook large meals for neighbors who have just had a baby. Their garden is full of seedlings they raised from scraps. They sit with nervous patients in the waiting room. Helping someone grow gives them deep satisfaction.
They mentor teenagers at the community center every week. Their voice softens when anyone mentions a struggle. They keep spare blankets in the car for cold strangers. Caring for people feels like their true calling.
They run a small after school program for local kids. Their hugs are famous among their friends. They notice when someone has not eaten and quietly fix it. Tending to others leaves them feeling full rather than drained.
They nurse wounded animals that others would give up on. Their new hires settle in quickly under their guidance. They pack lunches for their family with small notes inside. Protecting the vulnerable matters deeply to them.
They keep a list of friends who might need a phone call. Their home is where people come to recover after a bad day. They raise orphaned lambs on a small farm each spring. Encouraging others comes easily to them.
They volunteer at a shelter, washing and feeding the animals. Their patience with toddlers amazes exhausted parents. They send care packages to relatives far away. The wellbeing of others is never far from their mind.
They tutor struggling students for free on weekends. Their kitchen always has tea ready for anyone who stops by. They tuck blankets around sleeping guests on the couch. Seeing others flourish is their greatest reward.
They water the neighbors' plants while the family travels. Their gentle reminders help friends take better care of themselves. They stay late to comfort a coworker after bad news. Growth in others feels like their own success.
[practical]
They fix leaky faucets themselves rather than calling a plumber. Their car is old but runs perfectly because they maintain it. They choose clothes for durability rather than fashion. Fancy ideas interest them only if the ideas can be used.
They pack a small toolkit for every trip. Their budget favors needs over impulse purchases. They solve problems with whatever materials are on hand. Theory matters to them mostly as a path to results.
They grow vegetables to cut the grocery bill. Their advice usually starts with a simple first step. They repurpose old jars as storage for screws and nails. Wasting money or time bothers them.
They learned basic wiring to avoid paying an electrician. Their shopping lists focus on sturdy and versatile items. They prefer a reliable plan over a brilliant but risky one. Sentimental clutter rarely survives their spring cleaning.
They patch torn jackets instead of buying new ones. Their kitchen holds only tools that are used every week. They pick the straightforward fix when something breaks. Results matter more to them than appearances.
They keep a spare tire, jumper cables, and water in the trunk. Their solutions are simple enough that anyone can follow them. They read reviews focused on longevity rather than looks. Plans without clear steps frustrate them.
They cut firewood every autumn to heat the cabin. Their gifts are useful tools rather than decorations. They stock up on staples when prices drop. Grand visions interest them only once the visions become concrete.
They built shelves from reclaimed boards that have held for years. Their meetings focus on who does what by when. They know how to cook a cheap meal from pantry leftovers. Wasting effort on perfection seems silly to them.
They handle household repairs over a single weekend. Their choices favor function over style nearly every time. They explain steps plainly without extra jargon. Common sense is the tool they reach for first.
They sharpen their own knives and mend their own shoes. Their camping gear is simple, worn, and completely reliable. They measure twice and cut once on every project. Useful knowledge is what they value most.
[ambitious]
They set yearly goals and track progress on a chart above their desk. Their plans for the next decade are already mapped out. They take evening classes to qualify for a bigger role. Settling for average has never appealed to them.
They started a small business while still in college. Their calendar is packed with networking events. They volunteer for the hardest projects at work. Success in their field is something they pursue relentlessly.
They study leaders in their industry and copy the best habits. Their résumé lists promotions earned years ahead of schedule. They dream of founding a company that changes the market. Small victories only make them hungrier for more.
They wake early to work on a side project before the day job. Their five year plan includes a degree and a leadership position. They ask for feedback constantly to improve faster. Reaching the top feels like a real possibility to them.
They entered a national competition and placed near the top. Their desk is covered with plans for the next big step. They seek out mentors who have achieved great things. Standing still makes them restless.
They aim to run the department before turning forty. Their evenings go to reading books about strategy and growth. They pitch bold ideas in meetings without hesitation. Goals that seem impossible only motivate them.
They applied to the most selective program in the country. Their weekends are often spent refining a business plan. They compare their progress against people they admire. Being remembered for something important drives them.
They keep a vision board of achievements they intend to reach. Their career moves are carefully chosen to build influence. They rarely turn down a chance to lead. Comfort matters less to them than progress.
They negotiate hard for every raise and title. Their notebooks are full of ideas for expanding their business. They train for leadership roles years before any opening appears. Greatness is the standard they hold themselves to.
They treat every setback as a lesson on the way up. Their plans include owning property in three cities. They push their team to aim higher each quarter. Ordinary success would feel like failure to them.
[independent]
They travel alone to remote places without any fixed itinerary. Their decisions are made without polling friends for approval. They fixed up a cabin by themselves over several summers. Asking for help is their last resort.
They moved out at seventeen and supported themselves ever since. Their opinions come from their own research rather than the crowd. They prefer working solo on most projects. Being self-reliant gives them pride.
They cook, repair, and budget entirely on their own. Their weekends often involve solitary hikes in the hills. They rarely follow trends unless they see a reason. Freedom to choose their own path matters to them above all.
They built their career without a mentor or a safety net. Their apartment reflects their own taste rather than fashion. They navigate foreign cities without a guide. Depending on others makes them uneasy.
They learned to drive, cook, and sew without lessons. Their choices sometimes puzzle family members but rarely change. They happily spend holidays alone if they prefer. Self-sufficiency is a point of pride for them.
They run a freelance business with no partners. Their schedule is shaped entirely by their own priorities. They solve most problems before anyone knows there was one. Group decisions feel slow to them.
They taught themselves to code from free tutorials. Their travel plans change on a whim without consulting anyone. They keep their own counsel in heated debates. Needing permission irritates them.
They camp alone in the backcountry for a week at a time. Their financial decisions are researched and made solo. They rarely ask coworkers to check their work. Independence feels like oxygen to them.
They chose an unusual career despite family objections. Their home repairs are all handled without hired help. They set their own rules and follow each one strictly. Walking their own road is important to them.
They left a comfortable job to work for themselves. Their daily routine bends to nobody else's expectations. They find their own answers rather than asking around. Solitude feels comfortable rather than lonely to them.
[articulate]
They explain complicated ideas in a few clear sentences. Their speeches at weddings leave the room in tears and laughter. They choose words with the care of a jeweler choosing stones. Muddled explanations make them want to rephrase everything.
They write letters that friends keep for years. Their presentations at work are calm, clear, and persuasive. They can summarize a long meeting in one crisp paragraph. Precise language feels like a craft to them.
They debate policy with friends and always make their case clearly. Their emails never need a follow-up question. They coach coworkers on how to structure a talk. Finding the exact word delights them.
They host a podcast about history and speak without notes. Their stories have a clear beginning, middle, and end. They translate technical jargon for nervous clients. Clumsy phrasing in their own drafts gets fixed right away.
They give tours at the art museum with vivid descriptions. Their arguments are organized and easy to follow. They can calm a heated room with well chosen words. Clear writing is something they practice every day.
They won a speech contest in school and still enjoy public speaking. Their book reviews are sharp and elegantly written. They rarely stumble over words even when nervous. Expressing ideas precisely matters to them.
They draft speeches for a local politician. Their explanations make hard subjects feel simple. They listen closely and then respond with exactly the right phrase. Eloquence seems to come easily to them.
They lead workshops on writing clear reports. Their toasts at parties are quoted for years afterward. They correct vague wording gently but firmly. A well built sentence gives them real pleasure.
They narrate audiobooks in a smooth and expressive voice. Their spoken directions never leave anyone confused. They enjoy rewriting confusing instructions into plain language. Words are the tools they handle best.
They moderate panel discussions with ease and grace. Their essays are assigned as examples in writing classes. They can make a dull topic sound fascinating. Saying exactly what they mean is their strength.
[calm]
They float through crowded train stations as if the noise belongs to someone else. Their breathing stays slow while the people around them hurry and shout. They answer sharp words with a gentle nod and a pause. A still pond at dawn is their favorite place to think.
They meditate for twenty minutes every morning before coffee. Their voice stays level during heated family arguments. They handle missed flights with a shrug and a book. Panic rarely finds a foothold in them.
They sit by the lake at dusk and simply watch the water. Their steady presence settles nervous coworkers before big meetings. They take slow deep breaths when traffic comes to a standstill. Chaos around them seems to slide past without sticking.
They drink tea slowly on the porch every evening. Their reactions to bad news are thoughtful rather than frantic. They walk rather than rush even when running late. Loud crowds do not unsettle them.
They respond to angry customers with quiet reassurance. Their home is filled with soft light and gentle music. They rarely raise their voice about anything. Stressful deadlines seem to leave them untouched.
They keep a steady pace through the busiest days. Their friends call them for a dose of steady calm. They spend weekends gardening in peaceful silence. Sudden changes barely disturb their mood.
They float in the sea for long stretches without a thought. Their expression stays serene during turbulent flights. They let small annoyances pass without comment. Tension in a room eases when they arrive.
They practice slow breathing before every important conversation. Their handwriting is as steady as their temperament. They make decisions without any sense of rush. Noise and hurry seem far away from them.
They watch thunderstorms from the window with quiet interest. Their pulse barely changes during emergencies. They listen to complaints without becoming defensive. An unhurried manner follows them everywhere.
They spend early mornings fishing on a still pond. Their words are soft and deliberate even in arguments. They rarely worry about things beyond their control. Peace seems to surround them like a warm coat.
)corpus";

}  // namespace slotprobe
